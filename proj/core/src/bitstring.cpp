#include "simbias/bitstring.hpp"

#include <algorithm>

#include "simbias/error.hpp"

namespace simbias {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw InvalidArgument("core", "bit string must be non-empty");
    }
    if (bits_.find_first_not_of("01") != std::string::npos) {
        throw InvalidArgument("core", "bit string may contain only '0' and '1': \"" + bits_ + "\"");
    }
}

BitString BitString::zeros(std::size_t n) {
    if (n == 0) throw InvalidArgument("core", "bit string must be non-empty");
    return {std::string(n, '0'), Trusted{}};
}

BitString BitString::ones(std::size_t n) {
    if (n == 0) throw InvalidArgument("core", "bit string must be non-empty");
    return {std::string(n, '1'), Trusted{}};
}

BitString BitString::reversed() const {
    return {std::string(bits_.rbegin(), bits_.rend()), Trusted{}};
}

BitString BitString::complemented() const {
    std::string out = bits_;
    for (char& c : out) c = (c == '0') ? '1' : '0';
    return {std::move(out), Trusted{}};
}

BitString BitString::appended(bool bit) const {
    std::string out = bits_;
    out.push_back(bit ? '1' : '0');
    return {std::move(out), Trusted{}};
}

BitString BitString::concat(const BitString& tail) const {
    return {bits_ + tail.bits_, Trusted{}};
}

bool BitString::is_uniform() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [&](char c) { return c == bits_.front(); });
}

SymbolString::SymbolString(std::string symbols, std::string alphabet)
    : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
    if (alphabet_.empty()) {
        throw InvalidArgument("core", "alphabet must contain at least one symbol");
    }
    std::string sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("core", "alphabet has repeated symbols: \"" + alphabet_ + "\"");
    }
    if (auto pos = symbols_.find_first_not_of(alphabet_); pos != std::string::npos) {
        throw InvalidArgument("core", "symbol '" + std::string(1, symbols_[pos]) + "' at position " +
                                          std::to_string(pos) + " is not in alphabet \"" + alphabet_ + "\"");
    }
}

SymbolString SymbolString::dot_bracket(std::string structure) {
    return {std::move(structure), std::string(kDotBracketAlphabet)};
}

SymbolString SymbolString::rna(std::string sequence) {
    return {std::move(sequence), std::string(kRnaAlphabet)};
}

}  // namespace simbias
