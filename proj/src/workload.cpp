#include "accelppa/workload.hpp"

#include <filesystem>
#include <set>
#include <sstream>

#include "accelppa/error.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

// Defined in the generated builtin_networks_data.cpp.
std::string_view builtin_network_text(std::string_view name);

namespace {

std::string layer_error(const LayerConfig& l, const std::string& what) {
    return "layer '" + l.name + "': " + what;
}

void require(bool ok, const LayerConfig& l, const std::string& what) {
    if (!ok) throw ValidationError(layer_error(l, what));
}

std::string got(std::int64_t v) { return " (got " + std::to_string(v) + ")"; }

}  // namespace

LayerConfig conv_layer(std::string name, std::int64_t c, std::int64_t m, std::int64_t h,
                       std::int64_t w, std::int64_t r, std::int64_t s, std::int64_t u,
                       std::int64_t p) {
    return {std::move(name), LayerKind::conv, c, m, h, w, r, s, u, p};
}

LayerConfig fc_layer(std::string name, std::int64_t in_features, std::int64_t out_features) {
    return {std::move(name), LayerKind::fc, in_features, out_features, 1, 1, 1, 1, 1, 0};
}

void validate_layer(const LayerConfig& l) {
    require(!l.name.empty(), l, "name must be non-empty");
    require(l.in_channels >= 1, l, "input channels C must be >= 1" + got(l.in_channels));
    require(l.out_channels >= 1, l, "output channels M must be >= 1" + got(l.out_channels));
    require(l.in_height >= 1, l, "input height H must be >= 1" + got(l.in_height));
    require(l.in_width >= 1, l, "input width W must be >= 1" + got(l.in_width));
    require(l.filter_height >= 1, l, "filter height R must be >= 1" + got(l.filter_height));
    require(l.filter_width >= 1, l, "filter width S must be >= 1" + got(l.filter_width));
    require(l.stride >= 1, l, "stride U must be >= 1" + got(l.stride));
    require(l.padding >= 0, l, "padding P must be >= 0" + got(l.padding));
    if (l.kind == LayerKind::fc) {
        require(l.in_height == 1 && l.in_width == 1 && l.filter_height == 1 &&
                    l.filter_width == 1 && l.stride == 1 && l.padding == 0,
                l, "fc layers must have H=W=R=S=U=1 and P=0");
    }
    // Check the numerator before dividing: floor division of a negative value
    // would otherwise round toward zero and hide the violation.
    require(l.in_height - l.filter_height + 2 * l.padding >= 0, l,
            "output height E must be >= 1 (filter taller than padded input)");
    require(l.in_width - l.filter_width + 2 * l.padding >= 0, l,
            "output width F must be >= 1 (filter wider than padded input)");
}

void validate_network(const NetworkConfig& net) {
    if (net.layers.empty()) throw ValidationError("network '" + net.name + "' has no layers");
    std::set<std::string> seen;
    for (const auto& l : net.layers) {
        validate_layer(l);
        if (!seen.insert(l.name).second)
            throw ValidationError("network '" + net.name + "': duplicate layer name '" + l.name + "'");
    }
}

NetworkConfig load_network(std::string_view spec_text, std::string name, const std::string& source) {
    NetworkConfig net{std::move(name), {}};
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(spec_text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = text::split(line, ',');
        if (fields.size() != 10)
            throw ParseError(source, line_no,
                             "expected 10 fields name,kind,C,M,H,W,R,S,U,P, got " +
                                 std::to_string(fields.size()));
        LayerConfig l;
        l.name = std::string(fields[0]);
        const auto kind = text::lower(fields[1]);
        if (kind == "conv") l.kind = LayerKind::conv;
        else if (kind == "fc") l.kind = LayerKind::fc;
        else throw ParseError(source, line_no, "layer kind must be 'conv' or 'fc', got '" + kind + "'");
        l.in_channels = text::parse_int(fields[2], source, line_no);
        l.out_channels = text::parse_int(fields[3], source, line_no);
        l.in_height = text::parse_int(fields[4], source, line_no);
        l.in_width = text::parse_int(fields[5], source, line_no);
        l.filter_height = text::parse_int(fields[6], source, line_no);
        l.filter_width = text::parse_int(fields[7], source, line_no);
        l.stride = text::parse_int(fields[8], source, line_no);
        l.padding = text::parse_int(fields[9], source, line_no);
        try {
            validate_layer(l);
        } catch (const ValidationError& e) {
            throw ValidationError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen.insert(l.name).second)
            throw ValidationError(source + ":" + std::to_string(line_no) +
                                  ": duplicate layer name '" + l.name + "'");
        net.layers.push_back(std::move(l));
    }
    if (net.layers.empty()) throw ValidationError(source + ": network has no layers");
    return net;
}

std::string serialize_network(const NetworkConfig& net) {
    std::ostringstream out;
    out << "# " << net.name << "\n# name,kind,C,M,H,W,R,S,U,P\n";
    for (const auto& l : net.layers) {
        out << l.name << ',' << to_string(l.kind) << ',' << l.in_channels << ',' << l.out_channels
            << ',' << l.in_height << ',' << l.in_width << ',' << l.filter_height << ','
            << l.filter_width << ',' << l.stride << ',' << l.padding << '\n';
    }
    return out.str();
}

NetworkConfig builtin_network(std::string_view name) {
    const auto key = text::lower(name);
    const auto body = builtin_network_text(key);
    if (body.empty()) {
        std::string valid;
        for (auto n : kBuiltinNetworkNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
        throw InputError("unknown network '" + std::string(name) + "' (valid: " + valid + ")");
    }
    return load_network(body, key, "builtin:" + key);
}

NetworkConfig resolve_network(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (!builtin_network_text(text::lower(name_or_path)).empty()) return builtin_network(name_or_path);
    if (fs::is_regular_file(name_or_path)) {
        return load_network(text::read_file(name_or_path), fs::path(name_or_path).stem().string(),
                            name_or_path);
    }
    return builtin_network(name_or_path);  // throws, listing the valid names
}

std::int64_t layer_macs(const LayerConfig& l) {
    return l.out_channels * l.in_channels * l.out_height() * l.out_width() * l.filter_height *
           l.filter_width;
}

TensorBytes layer_tensor_bytes(const LayerConfig& l, const PEProperties& pe) {
    return {
        bytes_for(l.in_channels * l.in_height * l.in_width, pe.act_bits),
        bytes_for(l.out_channels * l.in_channels * l.filter_height * l.filter_width, pe.weight_bits),
        bytes_for(l.out_channels * l.out_height() * l.out_width(), pe.act_bits),
    };
}

std::string_view to_string(LayerKind k) { return k == LayerKind::fc ? "fc" : "conv"; }

}  // namespace accelppa
