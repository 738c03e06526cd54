#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "accelppa/costmodel.hpp"

namespace accelppa::testing {

// A polynomial over the five cost features with known raw coefficients in
// monomial_exponents order.
struct PlantedProblem {
    int degree = 1;
    std::vector<double> coefficients;
    std::vector<std::vector<double>> x;
    std::vector<double> y;
};

inline double eval_raw(const std::vector<double>& coef, const std::vector<double>& x, int degree) {
    const auto basis = polynomial_features(x, degree);
    double v = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) v += coef[i] * basis[i];
    return v;
}

// Features are integers in [1, 16]. Coefficients of degree-j monomials have
// magnitude in [0.5, 1.5] / 8^j so every degree contributes on the same scale.
// The constant is shifted so every y is positive. With noise > 0 each y is
// multiplied by a factor uniform in [1 - noise, 1 + noise].
inline PlantedProblem planted_problem(int degree, std::size_t rows, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> feat(1, 16);
    std::uniform_real_distribution<double> jitter(-noise, noise);

    PlantedProblem p;
    p.degree = degree;
    const auto exps = monomial_exponents(kCostFeatureNames.size(), degree);
    for (const auto& e : exps) {
        int total = 0;
        for (int a : e) total += a;
        double scale = 1.0;
        for (int j = 0; j < total; ++j) scale /= 8.0;
        p.coefficients.push_back((sign(rng) ? 1.0 : -1.0) * mag(rng) * scale);
    }
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> x(kCostFeatureNames.size());
        for (auto& v : x) v = feat(rng);
        p.x.push_back(std::move(x));
    }
    double lo = 0.0;
    for (const auto& x : p.x) lo = std::min(lo, eval_raw(p.coefficients, x, degree));
    p.coefficients[0] += 1.0 - lo + 10.0 * static_cast<double>(exps.size()) / 56.0;
    for (const auto& x : p.x) {
        const double clean = eval_raw(p.coefficients, x, degree);
        p.y.push_back(noise > 0.0 ? clean * (1.0 + jitter(rng)) : clean);
    }
    return p;
}

}  // namespace accelppa::testing
