#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accelppa/dse.hpp"
#include "accelppa/energy.hpp"
#include "accelppa/mapper.hpp"

namespace accelppa::cli {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kSeedEnvVar = "ACCELPPA_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

enum ExitCode : int { kOk = 0, kInputError = 2, kModelError = 3, kInternalError = 4 };

// Written next to every output as <output>.manifest.json.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::map<std::string, std::string> parameters;

    std::string to_json() const;
};

inline constexpr std::string_view kLayerCsvHeader =
    "layer,macs,compute_cycles,memory_cycles,total_cycles,utilization,glb_ifmap_r,glb_filter_r,glb_psum_r,"
    "glb_psum_w,dram_bytes,energy_J";

inline constexpr std::string_view kDesignCsvHeader =
    "rows,cols,ifmap_spad_B,filter_spad_B,psum_spad_B,glb_B,bw_Bpc,clock_hz,pe_type,mac_cycles,"
    "feasible,reason,latency_s,energy_J,area_mm2,power_mW,perf_per_area,norm_ppa,norm_energy,on_frontier,"
    "energy_power_J";

// Per-layer rows in network order followed by a TOTAL row.
std::string layer_csv(const NetworkConfig& net, const NetworkPerf& perf, const EnergyTable& table);
std::string design_csv(const std::vector<DesignPoint>& points);
std::string design_csv(const std::vector<DesignPoint>& points, const std::vector<std::size_t>& subset);

struct EvaluateOptions {
    std::string arch_file;
    std::string network;
    std::optional<std::string> energy_file;
    std::string out_csv;
    bool oracle = false;
    std::vector<std::string> model_files;
    std::uint64_t seed = kDefaultSeed;
};

struct FitOptions {
    std::string dataset_csv;
    CostTarget target = CostTarget::power;
    PEType pe_type = PEType::INT16;
    std::vector<int> degrees{1, 2, 3};
    int k = 5;
    std::string out_model;
    std::uint64_t seed = kDefaultSeed;
};

struct SweepOptions {
    std::string spec_file;
    std::optional<std::string> network;  // overrides the spec's network
    bool oracle = false;
    std::vector<std::string> model_files;
    std::optional<std::string> energy_file;
    std::string out_csv;
    std::optional<std::string> frontier_csv;  // default: <out stem>.frontier.csv
    std::optional<std::string> out_svg;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

struct DatasetOptions {
    std::size_t rows_per_type = 200;
    std::vector<PEType> pe_types{kPETypesByCost.begin(), kPETypesByCost.end()};
    std::string out_csv;
    std::uint64_t seed = kDefaultSeed;
};

// Each command writes its outputs plus manifests and a human-readable
// summary on `out`. Errors are thrown; run() maps them to exit codes.
void cmd_evaluate(const EvaluateOptions& o, std::ostream& out);
void cmd_fit(const FitOptions& o, std::ostream& out);
void cmd_sweep(const SweepOptions& o, std::ostream& out);
void cmd_gen_dataset(const DatasetOptions& o, std::ostream& out);

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accelppa::cli
