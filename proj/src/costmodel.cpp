#include "accelppa/costmodel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "accelppa/error.hpp"
#include "accelppa/text.hpp"

namespace accelppa {

std::string_view to_string(CostTarget t) { return t == CostTarget::power ? "power" : "area"; }

CostTarget parse_cost_target(std::string_view s) {
    const auto key = text::lower(text::trim(s));
    if (key == "power") return CostTarget::power;
    if (key == "area") return CostTarget::area;
    throw InputError("unknown target '" + std::string(s) + "' (valid: power, area)");
}

std::vector<double> cost_features(const AcceleratorConfig& c) {
    return {static_cast<double>(c.pe_count()), static_cast<double>(c.ifmap_spad_B),
            static_cast<double>(c.filter_spad_B), static_cast<double>(c.psum_spad_B),
            static_cast<double>(c.glb_B)};
}

std::vector<SynthRow> SynthDataset::for_type(PEType t) const {
    std::vector<SynthRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
                 [t](const SynthRow& r) { return r.cfg.pe_type == t; });
    return out;
}

// ---- dataset CSV -----------------------------------------------------------

SynthDataset load_synth_csv(std::string_view content, const std::string& source) {
    std::istringstream in{std::string(content)};
    std::string raw;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        for (auto f : text::split(line, ',')) header.emplace_back(f);
        break;
    }
    if (header.empty()) throw InputError(source + ": empty dataset (no header)");

    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (auto name : text::split(kSynthCsvHeader, ','))
        if (!col.contains(std::string(name)))
            throw InputError(source + ": missing column '" + std::string(name) + "'");

    SynthDataset ds;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto f = text::split(line, ',');
        if (f.size() != header.size())
            throw ParseError(source, line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                                  std::to_string(f.size()));
        const auto field = [&](const char* name) { return f[col.at(name)]; };
        const auto int_field = [&](const char* name) {
            const auto v = text::parse_int(field(name), source, line_no);
            if (v < 1) throw ParseError(source, line_no, std::string(name) + " must be >= 1");
            return v;
        };
        const auto target_field = [&](const char* name) {
            const auto v = text::parse_double(field(name), source, line_no);
            if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(source, line_no, std::string(name) + " must be > 0");
            return v;
        };
        SynthRow r;
        r.cfg.rows = int_field("pe_rows");
        r.cfg.cols = int_field("pe_cols");
        r.cfg.ifmap_spad_B = int_field("ifmap_spad_B");
        r.cfg.filter_spad_B = int_field("filter_spad_B");
        r.cfg.psum_spad_B = int_field("psum_spad_B");
        r.cfg.glb_B = int_field("glb_B");
        try {
            r.cfg.pe_type = parse_pe_type(field("pe_type"));
        } catch (const InputError& e) {
            throw ParseError(source, line_no, e.what());
        }
        r.power_mW = target_field("power_mW");
        r.area_mm2 = target_field("area_mm2");
        ds.rows.push_back(r);
    }
    return ds;
}

std::string write_synth_csv(const SynthDataset& ds) {
    std::ostringstream out;
    out << kSynthCsvHeader << '\n';
    for (const auto& r : ds.rows) {
        out << r.cfg.rows << ',' << r.cfg.cols << ',' << r.cfg.ifmap_spad_B << ',' << r.cfg.filter_spad_B << ','
            << r.cfg.psum_spad_B << ',' << r.cfg.glb_B << ',' << to_string(r.cfg.pe_type) << ','
            << text::format_double(r.power_mW) << ',' << text::format_double(r.area_mm2) << '\n';
    }
    return out.str();
}

// ---- polynomial basis ------------------------------------------------------

namespace {

void exponents_of_degree(std::size_t n, int remaining, std::size_t pos, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (pos + 1 == n) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[pos] = e;
        exponents_of_degree(n, remaining - e, pos + 1, cur, out);
    }
}

double monomial(std::span<const double> x, const std::vector<int>& exps) {
    double v = 1.0;
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) v *= x[i];
    return v;
}

}  // namespace

std::vector<std::vector<int>> monomial_exponents(std::size_t n_features, int degree) {
    if (degree < 0) throw std::invalid_argument("monomial_exponents: negative degree");
    std::vector<std::vector<int>> out;
    if (n_features == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur(n_features, 0);
    for (int t = 0; t <= degree; ++t) exponents_of_degree(n_features, t, 0, cur, out);
    return out;
}

std::size_t monomial_count(std::size_t n_features, int degree) {
    // C(n + d, d) computed incrementally; each partial product is itself a binomial.
    std::size_t c = 1;
    for (int i = 1; i <= degree; ++i) c = c * (n_features + static_cast<std::size_t>(i)) / static_cast<std::size_t>(i);
    return c;
}

std::vector<double> polynomial_features(std::span<const double> x, int degree) {
    if (degree < 1) throw std::invalid_argument("polynomial_features: degree must be >= 1");
    const auto exps = monomial_exponents(x.size(), degree);
    std::vector<double> out;
    out.reserve(exps.size());
    for (const auto& e : exps) out.push_back(monomial(x, e));
    return out;
}

// ---- regression ------------------------------------------------------------

namespace {

std::vector<double> standardize(const RegressionModel& m, std::span<const double> x) {
    if (x.size() != m.feature_means.size())
        throw ModelError("model expects " + std::to_string(m.feature_means.size()) + " features, got " +
                         std::to_string(x.size()));
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - m.feature_means[i]) / m.feature_scales[i];
    return z;
}

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

}  // namespace

double RegressionModel::evaluate(std::span<const double> x) const {
    const auto basis = polynomial_features(standardize(*this, x), degree);
    double v = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) v += coefficients[i] * basis[i];
    return v;
}

std::vector<double> RegressionModel::raw_coefficients() const {
    const auto n = feature_means.size();
    const auto exps = monomial_exponents(n, degree);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < exps.size(); ++i) index[exps[i]] = i;

    const auto binom = [](int a, int b) {
        double c = 1.0;
        for (int i = 1; i <= b; ++i) c = c * (a - b + i) / i;
        return c;
    };

    // prod_i ((x_i - mu_i) / s_i)^a_i expands to
    // prod_i s_i^-a_i * sum_{b_i <= a_i} C(a_i, b_i) x_i^b_i (-mu_i)^(a_i - b_i).
    std::vector<double> raw(exps.size(), 0.0);
    for (std::size_t k = 0; k < exps.size(); ++k) {
        const auto& a = exps[k];
        std::vector<int> b(n, 0);
        while (true) {
            double term = coefficients[k];
            for (std::size_t i = 0; i < n; ++i) {
                term *= binom(a[i], b[i]) * std::pow(-feature_means[i], a[i] - b[i]) /
                        std::pow(feature_scales[i], a[i]);
            }
            raw[index.at(b)] += term;
            std::size_t i = 0;
            while (i < n && b[i] == a[i]) b[i++] = 0;
            if (i == n) break;
            ++b[i];
        }
    }
    return raw;
}

RegressionModel fit_polynomial(const std::vector<std::vector<double>>& x, std::span<const double> y,
                               int degree, std::vector<std::string> feature_names) {
    if (degree < 1) throw ModelError("degree must be >= 1 (got " + std::to_string(degree) + ")");
    if (x.size() != y.size()) throw std::invalid_argument("fit_polynomial: x and y differ in length");
    const auto n_rows = x.size();
    const auto n_features = n_rows == 0 ? feature_names.size() : x.front().size();
    if (feature_names.empty()) feature_names = default_names(n_features);
    const auto n_coef = monomial_count(n_features, degree);
    if (n_rows < n_coef)
        throw UnderdeterminedFit("underdetermined fit: degree " + std::to_string(degree) + " needs " +
                                 std::to_string(n_coef) + " rows, have " + std::to_string(n_rows));

    RegressionModel m;
    m.degree = degree;
    m.feature_names = std::move(feature_names);
    m.feature_means.assign(n_features, 0.0);
    m.feature_scales.assign(n_features, 1.0);
    for (std::size_t j = 0; j < n_features; ++j) {
        double mean = 0.0;
        for (const auto& row : x) mean += row[j];
        mean /= static_cast<double>(n_rows);
        double var = 0.0;
        for (const auto& row : x) var += (row[j] - mean) * (row[j] - mean);
        var /= static_cast<double>(n_rows);
        m.feature_means[j] = mean;
        // A constant column stays constant (zero) after standardization and is
        // caught below as a rank deficiency.
        m.feature_scales[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }

    Eigen::MatrixXd a(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_coef));
    Eigen::VectorXd b(static_cast<Eigen::Index>(n_rows));
    for (std::size_t i = 0; i < n_rows; ++i) {
        const auto basis = polynomial_features(standardize(m, x[i]), degree);
        for (std::size_t j = 0; j < n_coef; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[j];
        b(static_cast<Eigen::Index>(i)) = y[i];
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-10);
    cod.compute(a);
    if (static_cast<std::size_t>(cod.rank()) < n_coef) {
        std::string constant;
        for (std::size_t j = 0; j < n_features; ++j)
            if (m.feature_scales[j] == 1.0 && std::all_of(x.begin(), x.end(), [&](const auto& r) { return r[j] == x[0][j]; }))
                constant += (constant.empty() ? "" : ", ") + m.feature_names[j];
        throw SingularSystem("singular system at degree " + std::to_string(degree) + ": design matrix rank " +
                             std::to_string(cod.rank()) + " < " + std::to_string(n_coef) + " coefficients" +
                             (constant.empty() ? "" : " (constant features: " + constant + ")") +
                             "; try a lower degree or more varied data");
    }
    const Eigen::VectorXd coef = cod.solve(b);
    m.coefficients.assign(coef.data(), coef.data() + coef.size());
    const Eigen::VectorXd resid = a * coef - b;
    m.train_rmse = std::sqrt(resid.squaredNorm() / static_cast<double>(n_rows));
    return m;
}

namespace {

struct Design {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
};

Design design_for(const SynthDataset& ds, CostTarget target, PEType pe_type) {
    Design d;
    for (const auto& r : ds.rows) {
        if (r.cfg.pe_type != pe_type) continue;
        d.x.push_back(cost_features(r.cfg));
        d.y.push_back(r.target(target));
    }
    return d;
}

std::vector<std::string> cost_feature_names() { return {kCostFeatureNames.begin(), kCostFeatureNames.end()}; }

template <typename E>
[[noreturn]] void rethrow_with_context(const E& e, const std::string& context) {
    throw E(context + ": " + e.what());
}

}  // namespace

RegressionModel fit(const SynthDataset& ds, CostTarget target, PEType pe_type, int degree) {
    const auto d = design_for(ds, target, pe_type);
    const auto context = std::string(to_string(target)) + " model for " + std::string(to_string(pe_type));
    try {
        auto m = fit_polynomial(d.x, d.y, degree, cost_feature_names());
        m.target = target;
        m.pe_type = pe_type;
        return m;
    } catch (const UnderdeterminedFit& e) {
        rethrow_with_context(e, context);
    } catch (const SingularSystem& e) {
        rethrow_with_context(e, context);
    }
}

ModelSelection kfold_select_polynomial(const std::vector<std::vector<double>>& x, std::span<const double> y,
                                       std::span<const int> degrees, int k, std::uint64_t seed,
                                       std::vector<std::string> feature_names) {
    if (k < 2) throw ModelError("k-fold cross validation needs k >= 2 (got " + std::to_string(k) + ")");
    if (degrees.empty()) throw ModelError("no candidate degrees");
    const auto n = x.size();
    if (n < static_cast<std::size_t>(k)) {
        std::string list;
        for (int d : degrees) list += (list.empty() ? "" : ",") + std::to_string(d);
        throw UnderdeterminedFit("underdetermined: cannot split " + std::to_string(n) + " rows into " + std::to_string(k) +
                                 " folds for degree " + list);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<int> fold_of(n);
    for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));

    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sst = 0.0;
    for (double v : y) sst += (v - y_mean) * (v - y_mean);

    ModelSelection sel;
    for (int degree : degrees) {
        DegreeScore score{degree, 0.0, 0.0, {}};
        double pooled_sse = 0.0;
        for (int f = 0; f < k; ++f) {
            std::vector<std::vector<double>> train_x;
            std::vector<double> train_y;
            std::vector<std::size_t> held;
            for (std::size_t i = 0; i < n; ++i) {
                if (fold_of[i] == f) {
                    held.push_back(i);
                } else {
                    train_x.push_back(x[i]);
                    train_y.push_back(y[i]);
                }
            }
            const auto context = "degree " + std::to_string(degree) + ", fold " + std::to_string(f + 1) + "/" + std::to_string(k);
            RegressionModel m;
            try {
                m = fit_polynomial(train_x, train_y, degree, feature_names);
            } catch (const UnderdeterminedFit& e) {
                rethrow_with_context(e, context);
            } catch (const SingularSystem& e) {
                rethrow_with_context(e, context);
            }
            double sse = 0.0;
            for (auto i : held) {
                const double r = m.evaluate(x[i]) - y[i];
                sse += r * r;
            }
            pooled_sse += sse;
            score.fold_mse.push_back(sse / static_cast<double>(held.size()));
        }
        score.cv_mse = std::accumulate(score.fold_mse.begin(), score.fold_mse.end(), 0.0) / k;
        score.cv_r2 = sst > 0.0 ? 1.0 - pooled_sse / sst : (pooled_sse == 0.0 ? 1.0 : 0.0);
        sel.scores.push_back(std::move(score));
    }

    // Visit candidates from the lowest degree up; a higher degree must beat the
    // incumbent by more than the tie tolerance to replace it.
    std::vector<std::size_t> by_degree(sel.scores.size());
    std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](auto a, auto b) { return sel.scores[a].degree < sel.scores[b].degree; });
    const double variance = sst / static_cast<double>(n);
    std::size_t best = by_degree.front();
    for (auto i : by_degree) {
        const double incumbent = sel.scores[best].cv_mse;
        const double tol = 1e-9 * incumbent + 1e-12 * variance;
        if (sel.scores[i].cv_mse < incumbent - tol) best = i;
    }

    sel.model = fit_polynomial(x, y, sel.scores[best].degree, std::move(feature_names));
    sel.model.cv_score = sel.scores[best].cv_mse;
    return sel;
}

ModelSelection kfold_select(const SynthDataset& ds, CostTarget target, PEType pe_type,
                            std::span<const int> degrees, int k, std::uint64_t seed) {
    const auto d = design_for(ds, target, pe_type);
    const auto context = std::string(to_string(target)) + " model for " + std::string(to_string(pe_type));
    try {
        auto sel = kfold_select_polynomial(d.x, d.y, degrees, k, seed, cost_feature_names());
        sel.model.target = target;
        sel.model.pe_type = pe_type;
        return sel;
    } catch (const UnderdeterminedFit& e) {
        rethrow_with_context(e, context);
    } catch (const SingularSystem& e) {
        rethrow_with_context(e, context);
    }
}

Prediction predict_features(const RegressionModel& m, std::span<const double> x, double floor) {
    const double raw = m.evaluate(x);
    if (raw <= 0.0 || !std::isfinite(raw)) return {floor, true};
    return {raw, false};
}

Prediction predict(const RegressionModel& m, const AcceleratorConfig& cfg, double floor) {
    if (cfg.pe_type != m.pe_type)
        throw ModelError("pe_type mismatch: " + std::string(to_string(m.target)) + " model is for " +
                         std::string(to_string(m.pe_type)) + ", config is " + std::string(to_string(cfg.pe_type)));
    return predict_features(m, cost_features(cfg), floor);
}

// ---- model file ------------------------------------------------------------

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + text::format_double(v[i]);
    return out;
}

std::vector<double> parse_doubles(std::string_view s, const std::string& source, std::size_t line) {
    std::vector<double> out;
    if (text::trim(s).empty()) return out;
    for (auto f : text::split(s, ',')) out.push_back(text::parse_double(f, source, line));
    return out;
}

}  // namespace

std::string serialize_model(const RegressionModel& m) {
    std::ostringstream out;
    out << "# polynomial cost model over standardized features\n"
        << "target = " << to_string(m.target) << '\n'
        << "pe_type = " << to_string(m.pe_type) << '\n'
        << "degree = " << m.degree << '\n';
    out << "features = ";
    for (std::size_t i = 0; i < m.feature_names.size(); ++i) out << (i ? "," : "") << m.feature_names[i];
    out << "\nmeans = " << join_doubles(m.feature_means) << '\n'
        << "scales = " << join_doubles(m.feature_scales) << '\n'
        << "coefficients = " << join_doubles(m.coefficients) << '\n'
        << "train_rmse = " << text::format_double(m.train_rmse) << '\n'
        << "cv_score = " << text::format_double(m.cv_score) << '\n';
    return out.str();
}

RegressionModel load_model(std::string_view content, const std::string& source) {
    RegressionModel m;
    std::map<std::string, std::size_t> seen;
    for (const auto& kv : text::parse_key_values(content, source)) {
        if (!seen.emplace(kv.key, kv.line).second) throw ParseError(source, kv.line, "duplicate key '" + kv.key + "'");
        try {
            if (kv.key == "target") m.target = parse_cost_target(kv.value);
            else if (kv.key == "pe_type") m.pe_type = parse_pe_type(kv.value);
            else if (kv.key == "degree") m.degree = static_cast<int>(text::parse_int(kv.value, source, kv.line));
            else if (kv.key == "features") {
                m.feature_names.clear();
                for (auto f : text::split(kv.value, ',')) m.feature_names.emplace_back(f);
            } else if (kv.key == "means") m.feature_means = parse_doubles(kv.value, source, kv.line);
            else if (kv.key == "scales") m.feature_scales = parse_doubles(kv.value, source, kv.line);
            else if (kv.key == "coefficients") m.coefficients = parse_doubles(kv.value, source, kv.line);
            else if (kv.key == "train_rmse") m.train_rmse = text::parse_double(kv.value, source, kv.line);
            else if (kv.key == "cv_score") m.cv_score = text::parse_double(kv.value, source, kv.line);
            else throw ParseError(source, kv.line, "unknown key '" + kv.key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const InputError& e) {
            throw ParseError(source, kv.line, e.what());
        }
    }
    for (const char* key : {"target", "pe_type", "degree", "features", "means", "scales", "coefficients"})
        if (!seen.contains(key)) throw ModelError(source + ": missing key '" + key + "'");
    const auto n = m.feature_names.size();
    if (m.degree < 1) throw ModelError(source + ": degree must be >= 1");
    if (m.feature_means.size() != n || m.feature_scales.size() != n)
        throw ModelError(source + ": means/scales must have one entry per feature");
    if (m.coefficients.size() != monomial_count(n, m.degree))
        throw ModelError(source + ": expected " + std::to_string(monomial_count(n, m.degree)) +
                         " coefficients for degree " + std::to_string(m.degree) + ", got " +
                         std::to_string(m.coefficients.size()));
    if (std::any_of(m.feature_scales.begin(), m.feature_scales.end(), [](double s) { return !(s > 0.0); }))
        throw ModelError(source + ": scales must be > 0");
    return m;
}

// ---- synthetic synthesis oracle --------------------------------------------

namespace {

struct OracleCoefficients {
    double pe;            // per PE
    double interaction;   // per PE per scratchpad byte
};

struct OracleTarget {
    double base;
    double per_spad_byte;  // per-PE scratchpad bytes, array-size independent part
    double per_glb_byte;
    OracleCoefficients fp32, int16, lightpe2, lightpe1;

    const OracleCoefficients& of(PEType t) const {
        switch (t) {
            case PEType::FP32: return fp32;
            case PEType::INT16: return int16;
            case PEType::LightPE2: return lightpe2;
            case PEType::LightPE1: return lightpe1;
        }
        return int16;
    }

    double value(const AcceleratorConfig& c) const {
        const auto& k = of(c.pe_type);
        const double pes = static_cast<double>(c.pe_count());
        const double spad = static_cast<double>(c.spad_bytes_per_pe());
        return base + k.pe * pes + per_spad_byte * spad + per_glb_byte * static_cast<double>(c.glb_B) +
               k.interaction * pes * spad;
    }
};

// Roughly 45 nm magnitudes: a few thousandths of a mm^2 per integer MAC, about
// ten for fp32, register-file scratchpads near 1e-5 mm^2 per byte and SRAM
// global buffer near 4e-6 mm^2 per byte. Power assumes a 200 MHz clock.
constexpr OracleTarget kOracleArea{0.08, 2.0e-5, 4.2e-6,
                                   {0.0095, 1.30e-5}, {0.0042, 1.15e-5}, {0.0017, 1.05e-5}, {0.0011, 1.00e-5}};
constexpr OracleTarget kOraclePower{6.0, 2.0e-3, 2.4e-4,
                                    {2.40, 4.0e-3}, {1.00, 3.4e-3}, {0.38, 3.1e-3}, {0.22, 3.0e-3}};

constexpr double kOracleNoise = 0.02;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double noise_factor(const AcceleratorConfig& c, std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t h = splitmix64(seed ^ salt);
    for (std::int64_t v : {c.rows, c.cols, c.ifmap_spad_B, c.filter_spad_B, c.psum_spad_B, c.glb_B,
                           static_cast<std::int64_t>(c.pe_type)})
        h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    return 1.0 + kOracleNoise * (2.0 * u - 1.0);
}

}  // namespace

SynthSample synth_oracle_noiseless(const AcceleratorConfig& cfg) {
    return {kOraclePower.value(cfg), kOracleArea.value(cfg)};
}

SynthSample synth_oracle(const AcceleratorConfig& cfg, std::uint64_t seed) {
    const auto clean = synth_oracle_noiseless(cfg);
    return {clean.power_mW * noise_factor(cfg, seed, 0x706f776572ULL),
            clean.area_mm2 * noise_factor(cfg, seed, 0x61726561ULL)};
}

SynthDataset generate_oracle_dataset(std::size_t rows_per_type, std::span<const PEType> types, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    SynthDataset ds;
    for (auto t : types) {
        for (std::size_t i = 0; i < rows_per_type; ++i) {
            AcceleratorConfig c;
            c.pe_type = t;
            c.rows = pick(2, 32);
            c.cols = pick(2, 32);
            c.ifmap_spad_B = pick(8, 256);
            c.filter_spad_B = pick(16, 512);
            c.psum_spad_B = pick(4, 128);
            c.glb_B = pick(16, 512) * 1024;
            const auto s = synth_oracle(c, seed);
            ds.rows.push_back({c, s.power_mW, s.area_mm2});
        }
    }
    return ds;
}

}  // namespace accelppa
