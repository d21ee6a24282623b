#include "simbias/rna.hpp"

#include <algorithm>
#include <vector>

#include "simbias/error.hpp"

namespace simbias::maps {

void RnaSpec::validate() const {
    if (seq_length < 1) throw InvalidArgument("maps", "rna: seq_length must be >= 1");
}

bool can_pair(char a, char b) noexcept {
    switch (a) {
        case 'A': return b == 'U';
        case 'U': return b == 'A' || b == 'G';
        case 'G': return b == 'C' || b == 'U';
        case 'C': return b == 'G';
        default: return false;
    }
}

namespace {

class NussinovTable {
public:
    NussinovTable(std::string_view seq, std::size_t min_loop)
        : seq_(seq), n_(seq.size()), min_loop_(min_loop), best_(n_ * n_, 0) {
        // best(i, j) for the closed interval [i, j]; intervals shorter than
        // min_loop + 2 cannot hold a pair and stay 0.
        for (std::size_t span = min_loop_ + 1; span < n_; ++span) {
            for (std::size_t i = 0; i + span < n_; ++i) {
                const std::size_t j = i + span;
                int best = at(i + 1, j);
                for (std::size_t k = i + min_loop_ + 1; k <= j; ++k) {
                    if (!can_pair(seq_[i], seq_[k])) continue;
                    best = std::max(best, 1 + at(i + 1, k - 1) + at(k + 1, j));
                }
                best_[i * n_ + j] = best;
            }
        }
    }

    int max_pairs() const { return n_ == 0 ? 0 : at(0, n_ - 1); }

    std::string traceback() const {
        std::string out(n_, '.');
        std::vector<std::pair<std::size_t, std::size_t>> stack;
        if (n_ > 0) stack.emplace_back(0, n_ - 1);
        while (!stack.empty()) {
            auto [i, j] = stack.back();
            stack.pop_back();
            while (i < j && at(i, j) > 0) {
                const int target = at(i, j);
                if (at(i + 1, j) == target) {
                    ++i;
                    continue;
                }
                std::size_t k = i + min_loop_ + 1;
                for (; k <= j; ++k) {
                    if (can_pair(seq_[i], seq_[k]) && 1 + at(i + 1, k - 1) + at(k + 1, j) == target) break;
                }
                out[i] = '(';
                out[k] = ')';
                if (k + 1 <= j) stack.emplace_back(k + 1, j);
                if (k >= i + 2) {
                    j = k - 1;
                    ++i;
                } else {
                    break;
                }
            }
        }
        return out;
    }

private:
    int at(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_ || i >= j) return 0;
        return best_[i * n_ + j];
    }

    std::string_view seq_;
    std::size_t n_;
    std::size_t min_loop_;
    std::vector<int> best_;
};

}  // namespace

std::string nussinov_fold(std::string_view seq, std::size_t min_loop) {
    if (auto pos = seq.find_first_not_of(kRnaAlphabet); pos != std::string_view::npos) {
        throw InvalidArgument("maps", "nussinov_fold: foreign nucleotide '" + std::string(1, seq[pos]) +
                                          "' at position " + std::to_string(pos));
    }
    if (seq.empty()) throw InvalidArgument("maps", "nussinov_fold: empty sequence");
    return NussinovTable(seq, min_loop).traceback();
}

SymbolString nussinov_fold(const SymbolString& seq, const RnaSpec& spec) {
    spec.validate();
    return SymbolString::dot_bracket(nussinov_fold(std::string_view(seq.str()), spec.min_loop));
}

std::size_t pair_count(std::string_view structure) noexcept {
    return static_cast<std::size_t>(std::count(structure.begin(), structure.end(), '('));
}

bool is_valid_structure(std::string_view seq, std::string_view structure, std::size_t min_loop) {
    if (seq.size() != structure.size()) return false;
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < structure.size(); ++j) {
        switch (structure[j]) {
            case '.': break;
            case '(': open.push_back(j); break;
            case ')': {
                if (open.empty()) return false;
                const std::size_t i = open.back();
                open.pop_back();
                if (j - i - 1 < min_loop) return false;
                if (!can_pair(seq[i], seq[j])) return false;
                break;
            }
            default: return false;
        }
    }
    return open.empty();
}

}  // namespace simbias::maps
