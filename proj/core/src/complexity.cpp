#include "simbias/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simbias/error.hpp"

namespace simbias {

ComplexityValue::ComplexityValue(double bits) : bits_(bits) {
    if (!std::isfinite(bits) || bits < 0.0) {
        throw InvalidArgument("core", "complexity must be finite and non-negative");
    }
}

// Kaspar & Schuster (1987) scan. `i` walks candidate copy sources in the
// parsed prefix, `l` is the start of the current word, `k` the length of the
// match being extended and `k_max` the longest match seen for this word.
std::size_t lz76_phrase_count(std::string_view s) {
    const std::size_t n = s.size();
    if (n == 0) throw InvalidArgument("core", "lz76_phrase_count: empty input");
    if (n == 1) return 1;

    std::size_t words = 1;
    std::size_t l = 1;
    std::size_t i = 0;
    std::size_t k = 1;
    std::size_t k_max = 1;
    for (;;) {
        if (s[i + k - 1] == s[l + k - 1]) {
            ++k;
            if (l + k > n) {
                ++words;
                break;
            }
        } else {
            k_max = std::max(k, k_max);
            ++i;
            if (i == l) {
                ++words;
                l += k_max;
                if (l + 1 > n) break;
                i = 0;
                k = 1;
                k_max = 1;
            } else {
                k = 1;
            }
        }
    }
    return words;
}

std::size_t lz76_phrase_count(const SymbolString& s) {
    return lz76_phrase_count(std::string_view(s.str()));
}

ComplexityValue ktilde(const BitString& x) {
    const double scale = std::log2(static_cast<double>(x.size()));
    if (x.is_uniform()) return ComplexityValue(scale);

    const std::string rev(x.str().rbegin(), x.str().rend());
    const auto forward = lz76_phrase_count(x.view());
    const auto backward = lz76_phrase_count(rev);
    return ComplexityValue(scale * static_cast<double>(forward + backward) / 2.0);
}

std::size_t changes_count(const BitString& x) noexcept {
    std::size_t changes = 0;
    const auto v = x.view();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] != v[i + 1]) ++changes;
    }
    return changes;
}

std::size_t ones_count(const BitString& x) noexcept {
    return static_cast<std::size_t>(std::count(x.view().begin(), x.view().end(), '1'));
}

BitString encode_dotbracket(std::string_view structure) {
    if (structure.empty()) throw InvalidArgument("core", "encode_dotbracket: empty structure");
    std::string bits;
    bits.reserve(2 * structure.size());
    for (std::size_t i = 0; i < structure.size(); ++i) {
        switch (structure[i]) {
            case '.': bits += "00"; break;
            case '(': bits += "01"; break;
            case ')': bits += "10"; break;
            default:
                throw InvalidArgument("core", "encode_dotbracket: foreign symbol '" +
                                                  std::string(1, structure[i]) + "' at position " +
                                                  std::to_string(i));
        }
    }
    return BitString(std::move(bits));
}

BitString encode_dotbracket(const SymbolString& structure) {
    return encode_dotbracket(std::string_view(structure.str()));
}

}  // namespace simbias
