#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "accelppa/pe.hpp"

namespace accelppa {

enum class LayerKind { conv, fc };

// One convolutional or fully-connected layer. Fully-connected layers are
// stored as a 1x1 convolution over a 1x1 feature map.
struct LayerConfig {
    std::string name;
    LayerKind kind = LayerKind::conv;
    std::int64_t in_channels = 1;    // C
    std::int64_t out_channels = 1;   // M (filters)
    std::int64_t in_height = 1;      // H
    std::int64_t in_width = 1;       // W
    std::int64_t filter_height = 1;  // R
    std::int64_t filter_width = 1;   // S
    std::int64_t stride = 1;         // U
    std::int64_t padding = 0;        // P

    std::int64_t out_height() const { return (in_height - filter_height + 2 * padding) / stride + 1; }
    std::int64_t out_width() const { return (in_width - filter_width + 2 * padding) / stride + 1; }

    bool operator==(const LayerConfig&) const = default;
};

struct NetworkConfig {
    std::string name;
    std::vector<LayerConfig> layers;

    bool operator==(const NetworkConfig&) const = default;
};

struct TensorBytes {
    std::int64_t ifmap = 0;
    std::int64_t filter = 0;
    std::int64_t ofmap = 0;

    bool operator==(const TensorBytes&) const = default;
};

LayerConfig conv_layer(std::string name, std::int64_t c, std::int64_t m, std::int64_t h,
                       std::int64_t w, std::int64_t r, std::int64_t s, std::int64_t u,
                       std::int64_t p);
LayerConfig fc_layer(std::string name, std::int64_t in_features, std::int64_t out_features);

// Throws ValidationError naming the layer and the violated invariant.
void validate_layer(const LayerConfig& layer);
void validate_network(const NetworkConfig& net);

// Parses the `name,kind,C,M,H,W,R,S,U,P` record format. `source` labels diagnostics.
NetworkConfig load_network(std::string_view spec_text, std::string name = "network",
                           const std::string& source = "<network>");
std::string serialize_network(const NetworkConfig& net);

inline constexpr std::string_view kBuiltinNetworkNames[] = {"vgg16", "resnet34", "resnet50"};

// Throws InputError listing the valid names for anything else.
NetworkConfig builtin_network(std::string_view name);

// Builtin name, or a path to a network file.
NetworkConfig resolve_network(const std::string& name_or_path);

std::int64_t layer_macs(const LayerConfig& layer);

// Ofmap is re-quantized to activation precision.
TensorBytes layer_tensor_bytes(const LayerConfig& layer, const PEProperties& pe);

std::string_view to_string(LayerKind k);

}  // namespace accelppa
