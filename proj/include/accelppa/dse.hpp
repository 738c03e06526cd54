#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "accelppa/arch.hpp"
#include "accelppa/costmodel.hpp"
#include "accelppa/energy.hpp"
#include "accelppa/error.hpp"
#include "accelppa/workload.hpp"

namespace accelppa {

// Value lists per swept parameter. The design space is their cartesian
// product, enumerated with `rows` outermost and `pe_type` innermost, each
// list in the order given.
struct SweepSpec {
    std::vector<std::int64_t> rows;
    std::vector<std::int64_t> cols;
    std::vector<std::int64_t> ifmap_spad_B;
    std::vector<std::int64_t> filter_spad_B;
    std::vector<std::int64_t> psum_spad_B;
    std::vector<std::int64_t> glb_B;
    std::vector<double> bw_Bpc;
    std::vector<PEType> pe_type;
    std::string network = "vgg16";
    double clock_hz = kDefaultClockHz;
    int mac_cycles = 1;
    std::optional<std::size_t> max_points;

    // Throws ValidationError on an empty list or when the size overflows.
    std::size_t cartesian_size() const;
    AcceleratorConfig point(std::size_t index) const;
};

SweepSpec load_sweep_spec(std::string_view content, const std::string& source = "<sweep>");

// Area and power for a configuration, either from the synthetic oracle or
// from fitted per-type regression models.
class CostSource {
public:
    static CostSource oracle(std::uint64_t seed);
    static CostSource fitted(std::vector<RegressionModel> models);

    bool is_oracle() const { return oracle_seed_.has_value(); }
    std::uint64_t seed() const { return oracle_seed_.value_or(0); }

    // Throws ModelError naming the first type/target without a model.
    void require_types(std::span<const PEType> types) const;

    struct Estimate {
        double area_mm2 = 0.0;
        double power_mW = 0.0;
        bool clamped = false;
    };
    Estimate estimate(const AcceleratorConfig& cfg) const;

private:
    std::optional<std::uint64_t> oracle_seed_;
    std::map<std::pair<CostTarget, PEType>, RegressionModel> models_;
};

struct DesignPoint {
    AcceleratorConfig cfg;
    bool feasible = false;
    std::string reason;  // set when infeasible
    std::int64_t total_cycles = 0;
    double latency_s = 0.0;
    double energy_J = 0.0;         // event-count energy
    double energy_power_J = 0.0;   // power x latency
    double area_mm2 = 0.0;
    double power_mW = 0.0;
    double perf_per_area = 0.0;    // inferences / s / mm^2
    bool cost_clamped = false;
    std::optional<double> norm_ppa;
    std::optional<double> norm_energy;
    bool on_frontier = false;
    bool duplicate = false;        // same objectives as a frontier representative
};

DesignPoint evaluate_point(const AcceleratorConfig& cfg, const NetworkConfig& net, const CostSource& cost,
                           const EnergyTables& tables);

struct SweepResult {
    std::vector<DesignPoint> points;  // lexicographic order
    std::size_t space_size = 0;
    bool truncated = false;           // max_points cut the space short
};

// Points are evaluated concurrently; the output order and values do not
// depend on scheduling.
SweepResult sweep(const SweepSpec& spec, const NetworkConfig& net, const CostSource& cost,
                  const EnergyTables& tables, unsigned threads = 0);

// ---- Pareto ----------------------------------------------------------------

struct Objectives {
    double perf_per_area = 0.0;  // maximize
    double energy_J = 0.0;       // minimize
};

struct ParetoResult {
    std::vector<std::size_t> frontier;    // indices, perf_per_area descending
    std::vector<std::size_t> duplicates;  // equal to a frontier entry, not retained
};

// Non-dominated subset. Among points with identical objectives only the
// lowest index is kept; the rest are reported as duplicates. Throws
// std::invalid_argument on empty input.
ParetoResult pareto_front(std::span<const Objectives> points);

// Frontier of the feasible points, indices into `points`. Sets on_frontier
// and duplicate flags. Throws ValidationError when nothing is feasible.
ParetoResult pareto(std::vector<DesignPoint>& points);

// ---- normalization ---------------------------------------------------------

class NoBaseline : public ValidationError {
public:
    NoBaseline() : ValidationError("no INT16 baseline: the design space has no feasible INT16 point") {}
};

// Feasible INT16 point with the highest perf/area; ties go to lower energy,
// then to the lexicographically smaller configuration.
std::size_t select_baseline(std::span<const DesignPoint> points);

// Fills norm_ppa / norm_energy of every feasible point relative to the
// baseline and returns the baseline's index.
std::size_t normalize(std::vector<DesignPoint>& points);

struct TypeSummary {
    PEType pe_type = PEType::INT16;
    std::size_t index = 0;      // best point of this type by norm_ppa
    double norm_ppa = 0.0;
    double norm_energy = 0.0;
    double ppa_gain = 0.0;      // norm_ppa
    double energy_gain = 0.0;   // 1 / norm_energy
};

// One entry per PE type that has a feasible normalized point, cheapest type first.
std::vector<TypeSummary> summarize(std::span<const DesignPoint> points);

}  // namespace accelppa
