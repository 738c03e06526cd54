#include "accelppa/pe.hpp"

#include <algorithm>

#include "accelppa/error.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

namespace {

PEProperties integer_pe(int act, int weight, MultiplierStyle style) {
    return {act, weight, std::min(32, act + weight + 8), style, 1};
}

}  // namespace

PEProperties pe_type_properties(PEType t) {
    switch (t) {
        case PEType::FP32: return {32, 32, 32, MultiplierStyle::full_multiply, 1};
        case PEType::INT16: return integer_pe(16, 16, MultiplierStyle::full_multiply);
        case PEType::LightPE1: return integer_pe(8, 4, MultiplierStyle::one_shift);
        case PEType::LightPE2: return integer_pe(8, 8, MultiplierStyle::shift_add);
    }
    throw std::logic_error("pe_type_properties: bad PEType");
}

std::string_view to_string(PEType t) {
    switch (t) {
        case PEType::FP32: return "fp32";
        case PEType::INT16: return "int16";
        case PEType::LightPE1: return "lightpe1";
        case PEType::LightPE2: return "lightpe2";
    }
    return "?";
}

std::string_view display_name(PEType t) {
    switch (t) {
        case PEType::FP32: return "FP32";
        case PEType::INT16: return "INT16";
        case PEType::LightPE1: return "LightPE-1";
        case PEType::LightPE2: return "LightPE-2";
    }
    return "?";
}

std::string_view to_string(MultiplierStyle s) {
    switch (s) {
        case MultiplierStyle::full_multiply: return "full_multiply";
        case MultiplierStyle::one_shift: return "one_shift";
        case MultiplierStyle::shift_add: return "shift_add";
    }
    return "?";
}

PEType parse_pe_type(std::string_view s) {
    const auto key = text::lower(text::trim(s));
    for (auto t : kPETypesByCost)
        if (key == to_string(t)) return t;
    throw InputError("unknown pe_type '" + std::string(s) +
                     "' (valid: fp32, int16, lightpe1, lightpe2)");
}

}  // namespace accelppa
