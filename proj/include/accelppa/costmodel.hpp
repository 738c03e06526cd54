#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "accelppa/arch.hpp"
#include "accelppa/pe.hpp"

namespace accelppa {

enum class CostTarget { power, area };

std::string_view to_string(CostTarget t);
CostTarget parse_cost_target(std::string_view s);

// Hardware knobs the power and area models regress on.
inline constexpr std::array<std::string_view, 5> kCostFeatureNames{
    "pe_count", "ifmap_spad_B", "filter_spad_B", "psum_spad_B", "glb_B"};

std::vector<double> cost_features(const AcceleratorConfig& cfg);

// One synthesized design. Only the cost-model fields of `cfg` are meaningful.
struct SynthRow {
    AcceleratorConfig cfg;
    double power_mW = 0.0;
    double area_mm2 = 0.0;

    double target(CostTarget t) const { return t == CostTarget::power ? power_mW : area_mm2; }
};

struct SynthDataset {
    std::vector<SynthRow> rows;

    std::vector<SynthRow> for_type(PEType t) const;
};

inline constexpr std::string_view kSynthCsvHeader =
    "pe_rows,pe_cols,ifmap_spad_B,filter_spad_B,psum_spad_B,glb_B,pe_type,power_mW,area_mm2";

// Columns are matched by header name. Missing columns, non-positive targets
// and features < 1 raise InputError naming the column or line.
SynthDataset load_synth_csv(std::string_view content, const std::string& source = "<dataset>");
std::string write_synth_csv(const SynthDataset& ds);

// ---- polynomial basis ------------------------------------------------------

// Exponent tuples of every monomial of total degree <= `degree` over
// `n_features` variables: graded by total degree, constant first, and
// lexicographically descending within a degree (x1 before x2, x1^2 before x1*x2).
std::vector<std::vector<int>> monomial_exponents(std::size_t n_features, int degree);

// binomial(n_features + degree, degree)
std::size_t monomial_count(std::size_t n_features, int degree);

std::vector<double> polynomial_features(std::span<const double> x, int degree);

// ---- regression ------------------------------------------------------------

struct RegressionModel {
    CostTarget target = CostTarget::power;
    PEType pe_type = PEType::INT16;
    int degree = 1;
    std::vector<std::string> feature_names;
    std::vector<double> feature_means;
    std::vector<double> feature_scales;
    std::vector<double> coefficients;  // over the standardized monomial basis
    double train_rmse = 0.0;
    double cv_score = -1.0;            // mean held-out squared error, < 0 when not cross-validated

    // Polynomial value at raw (unstandardized) features, unclamped.
    double evaluate(std::span<const double> x) const;

    // The same polynomial expressed over raw features, in monomial_exponents order.
    std::vector<double> raw_coefficients() const;
};

// Least squares on standardized features via a complete orthogonal
// decomposition. Throws UnderdeterminedFit when rows < coefficients and
// SingularSystem when the expanded design matrix is rank deficient.
RegressionModel fit_polynomial(const std::vector<std::vector<double>>& x, std::span<const double> y,
                               int degree, std::vector<std::string> feature_names = {});

RegressionModel fit(const SynthDataset& ds, CostTarget target, PEType pe_type, int degree);

struct DegreeScore {
    int degree = 0;
    double cv_mse = 0.0;             // mean over folds of held-out MSE
    double cv_r2 = 0.0;              // 1 - pooled held-out SSE / total sum of squares
    std::vector<double> fold_mse;
};

struct ModelSelection {
    RegressionModel model;           // selected degree, refit on all rows
    std::vector<DegreeScore> scores; // in candidate order
};

inline constexpr std::uint64_t kDefaultFoldSeed = 0x5eed;

// Rows are shuffled with `seed` and row i of the shuffle goes to fold i mod k.
// Lowest mean held-out error wins; scores within a tie tolerance resolve to the
// lower degree.
ModelSelection kfold_select_polynomial(const std::vector<std::vector<double>>& x, std::span<const double> y,
                                       std::span<const int> degrees, int k,
                                       std::uint64_t seed = kDefaultFoldSeed,
                                       std::vector<std::string> feature_names = {});

ModelSelection kfold_select(const SynthDataset& ds, CostTarget target, PEType pe_type,
                            std::span<const int> degrees, int k, std::uint64_t seed = kDefaultFoldSeed);

struct Prediction {
    double value = 0.0;
    bool clamped = false;  // raw prediction was <= 0 and `floor` was returned
};

inline constexpr double kDefaultPredictionFloor = 1e-6;

Prediction predict_features(const RegressionModel& m, std::span<const double> x,
                            double floor = kDefaultPredictionFloor);
// Throws ModelError when cfg.pe_type differs from the model's.
Prediction predict(const RegressionModel& m, const AcceleratorConfig& cfg,
                   double floor = kDefaultPredictionFloor);

std::string serialize_model(const RegressionModel& m);
RegressionModel load_model(std::string_view content, const std::string& source = "<model>");

// ---- synthetic synthesis oracle --------------------------------------------

struct SynthSample {
    double power_mW = 0.0;
    double area_mm2 = 0.0;
};

// Deterministic stand-in for logic synthesis results. Both targets are a
// per-type constant plus terms linear in pe_count, per-PE scratchpad bytes
// and glb_B, plus a pe_count x scratchpad interaction, times a seeded
// multiplicative noise factor in [0.98, 1.02]. Per-PE coefficients increase
// LightPE-1 < LightPE-2 < INT16 < FP32.
SynthSample synth_oracle(const AcceleratorConfig& cfg, std::uint64_t seed);
// Same polynomial without the noise factor.
SynthSample synth_oracle_noiseless(const AcceleratorConfig& cfg);

// `rows_per_type` random configurations for each listed type, labelled by the oracle.
SynthDataset generate_oracle_dataset(std::size_t rows_per_type, std::span<const PEType> types,
                                     std::uint64_t seed);

}  // namespace accelppa
