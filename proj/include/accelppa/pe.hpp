#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace accelppa {

enum class PEType { FP32, INT16, LightPE1, LightPE2 };

// Cheapest to most expensive datapath. Used wherever a per-type ordering is enforced.
inline constexpr std::array<PEType, 4> kPETypesByCost{PEType::LightPE1, PEType::LightPE2,
                                                      PEType::INT16, PEType::FP32};

enum class MultiplierStyle { full_multiply, one_shift, shift_add };

struct PEProperties {
    int act_bits = 0;
    int weight_bits = 0;
    int psum_bits = 0;
    MultiplierStyle multiplier_style = MultiplierStyle::full_multiply;
    int mac_cycles = 1;

    double act_bytes() const { return act_bits / 8.0; }
    double weight_bytes() const { return weight_bits / 8.0; }
    double psum_bytes() const { return psum_bits / 8.0; }

    bool operator==(const PEProperties&) const = default;
};

// Fixed property record per PE type. Integer types carry 8 accumulator guard
// bits over the product width, capped at 32.
PEProperties pe_type_properties(PEType t);

std::string_view to_string(PEType t);       // "fp32", "int16", "lightpe1", "lightpe2"
std::string_view display_name(PEType t);    // "FP32", "INT16", "LightPE-1", "LightPE-2"
std::string_view to_string(MultiplierStyle s);

// Accepts the lowercase identifiers above (case-insensitive); throws InputError otherwise.
PEType parse_pe_type(std::string_view s);

// Bytes needed to hold `elements` values of `bits` each, rounded up.
constexpr std::int64_t bytes_for(std::int64_t elements, int bits) {
    return (elements * bits + 7) / 8;
}

}  // namespace accelppa
