#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace simbias {

// Finite non-empty binary sequence. Stored in its canonical textual form
// ('0'/'1' characters, left to right), which is also the on-disk form.
class BitString {
public:
    // Throws InvalidArgument on empty input or a character outside {0,1}.
    explicit BitString(std::string bits);

    static BitString zeros(std::size_t n);
    static BitString ones(std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

    const std::string& str() const noexcept { return bits_; }
    std::string_view view() const noexcept { return bits_; }

    BitString reversed() const;
    BitString complemented() const;
    BitString appended(bool bit) const;
    BitString concat(const BitString& tail) const;
    bool is_uniform() const noexcept;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    struct Trusted {};
    BitString(std::string bits, Trusted) : bits_(std::move(bits)) {}

    std::string bits_;
};

// Sequence over a declared finite alphabet (dot-bracket structures, RNA
// sequences, or arbitrary symbol streams fed to the LZ76 parser).
class SymbolString {
public:
    // Throws InvalidArgument if the alphabet is empty, has repeated symbols,
    // or `symbols` contains a character not in it.
    SymbolString(std::string symbols, std::string alphabet);

    static SymbolString dot_bracket(std::string structure);
    static SymbolString rna(std::string sequence);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const std::string& str() const noexcept { return symbols_; }
    const std::string& alphabet() const noexcept { return alphabet_; }

private:
    std::string symbols_;
    std::string alphabet_;
};

inline constexpr std::string_view kDotBracketAlphabet = ".()";
inline constexpr std::string_view kRnaAlphabet = "ACGU";

}  // namespace simbias

template <>
struct std::hash<simbias::BitString> {
    std::size_t operator()(const simbias::BitString& b) const noexcept {
        return std::hash<std::string>{}(b.str());
    }
};
