#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "simbias/bitstring.hpp"

namespace simbias::maps {

struct RnaSpec {
    std::size_t seq_length = 35;
    std::size_t min_loop = 3;  // minimum unpaired bases enclosed by a hairpin

    void validate() const;
    friend bool operator==(const RnaSpec&, const RnaSpec&) = default;
};

// Watson-Crick plus GU wobble.
bool can_pair(char a, char b) noexcept;

// Maximum base-pair secondary structure (Nussinov) in dot-bracket form.
// Traceback ties prefer leaving the left base unpaired, then the smallest
// partner index. Throws InvalidArgument on a non-ACGU symbol.
SymbolString nussinov_fold(const SymbolString& seq, const RnaSpec& spec);
std::string nussinov_fold(std::string_view seq, std::size_t min_loop);

// Number of base pairs in a dot-bracket string.
std::size_t pair_count(std::string_view structure) noexcept;

// True when `structure` is balanced, has the same length as `seq`, every pair
// satisfies can_pair and every hairpin encloses at least `min_loop` bases.
bool is_valid_structure(std::string_view seq, std::string_view structure, std::size_t min_loop);

}  // namespace simbias::maps
