#pragma once

#include <cstddef>
#include <string_view>

#include "simbias/bitstring.hpp"

namespace simbias {

// Estimated complexity in bits. Always finite and non-negative.
class ComplexityValue {
public:
    constexpr ComplexityValue() = default;
    explicit ComplexityValue(double bits);

    constexpr double bits() const noexcept { return bits_; }

    friend constexpr auto operator<=>(ComplexityValue, ComplexityValue) = default;

private:
    double bits_ = 0.0;
};

// Number of words in the Lempel-Ziv (1976) exhaustive production history of
// `s`. Each word is the shortest prefix of the remainder that cannot be
// copied from the already-parsed text (overlapping copies allowed); a
// trailing reproducible fragment counts as a final word. Any alphabet.
// Throws InvalidArgument on empty input.
std::size_t lz76_phrase_count(std::string_view s);
std::size_t lz76_phrase_count(const SymbolString& s);

// Adapted LZ complexity:
//   log2(n)                                  if x is all zeros or all ones
//   log2(n) * (N(x) + N(reverse(x))) / 2     otherwise
// where N is lz76_phrase_count.
ComplexityValue ktilde(const BitString& x);

std::size_t changes_count(const BitString& x) noexcept;
std::size_t ones_count(const BitString& x) noexcept;

// '.' -> 00, '(' -> 01, ')' -> 10. Throws InvalidArgument on any other symbol.
BitString encode_dotbracket(std::string_view structure);
BitString encode_dotbracket(const SymbolString& structure);

}  // namespace simbias
