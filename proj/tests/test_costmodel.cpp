#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "accelppa/costmodel.hpp"
#include "accelppa/error.hpp"
#include "support/planted.hpp"

using namespace accelppa;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    return worst;
}

std::size_t index_of(const std::vector<std::vector<int>>& exps, std::vector<int> e) {
    return static_cast<std::size_t>(std::find(exps.begin(), exps.end(), e) - exps.begin());
}

constexpr std::array<int, 3> kDegrees{1, 2, 3};

}  // namespace

TEST_CASE("polynomial basis") {
    const std::vector<double> x{2, 3};
    CHECK(polynomial_features(x, 2) == std::vector<double>{1, 2, 3, 4, 6, 9});
    CHECK(polynomial_features(x, 1) == std::vector<double>{1, 2, 3});
    CHECK(polynomial_features(x, 3) == std::vector<double>{1, 2, 3, 4, 6, 9, 8, 12, 18, 27});
    CHECK(monomial_count(5, 1) == 6);
    CHECK(monomial_count(5, 2) == 21);
    CHECK(monomial_count(5, 3) == 56);
    for (int d = 1; d <= 4; ++d) CHECK(monomial_exponents(5, d).size() == monomial_count(5, d));
    CHECK(monomial_exponents(2, 2) ==
          std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
    CHECK_THROWS(polynomial_features(x, 0));
    const std::vector<double> zero{0, 0};
    for (int d = 1; d <= 4; ++d) {
        const auto f = polynomial_features(zero, d);
        CHECK(f.front() == 1.0);
        CHECK(std::all_of(f.begin() + 1, f.end(), [](double v) { return v == 0.0; }));
    }
}

TEST_CASE("fit_polynomial") {
    SUBCASE("exact line") {
        const std::vector<std::vector<double>> x{{0}, {1}, {2}};
        const std::vector<double> y{2, 5, 8};
        const auto m = fit_polynomial(x, y, 1);
        const auto raw = m.raw_coefficients();
        CHECK(raw[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(raw[1] == doctest::Approx(3.0).epsilon(1e-12));
        const std::vector<double> at{3};
        CHECK(predict_features(m, at).value == doctest::Approx(11.0).epsilon(1e-12));
        CHECK(m.train_rmse < 1e-12);
    }
    SUBCASE("planted pe_count x spad_total interaction") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> pick(1, 64);
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        for (int i = 0; i < 60; ++i) {
            std::vector<double> row(5);
            for (auto& v : row) v = pick(rng);
            y.push_back(1.0 + 0.5 * row[0] + 0.002 * row[0] * (row[1] + row[2] + row[3]));
            x.push_back(std::move(row));
        }
        const auto m = fit_polynomial(x, y, 2);
        const auto exps = monomial_exponents(5, 2);
        std::vector<double> planted(exps.size(), 0.0);
        planted[0] = 1.0;
        planted[index_of(exps, {1, 0, 0, 0, 0})] = 0.5;
        planted[index_of(exps, {1, 1, 0, 0, 0})] = 0.002;
        planted[index_of(exps, {1, 0, 1, 0, 0})] = 0.002;
        planted[index_of(exps, {1, 0, 0, 1, 0})] = 0.002;
        CHECK(max_abs_diff(m.raw_coefficients(), planted) <= 1e-6);
    }
    SUBCASE("planted degrees 1 to 3") {
        for (int d = 1; d <= 3; ++d) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const auto p = testing::planted_problem(d, 200, 0.0, seed);
                const auto m = fit_polynomial(p.x, p.y, d);
                CHECK(max_abs_diff(m.raw_coefficients(), p.coefficients) <= 1e-6);
            }
        }
    }
    SUBCASE("property: noiseless data of degree <= d is interpolated at degree d") {
        for (int planted = 1; planted <= 3; ++planted)
            for (int d = planted; d <= 3; ++d) {
                const auto p = testing::planted_problem(planted, 200, 0.0, 40 + static_cast<std::uint64_t>(planted * 3 + d));
                const auto m = fit_polynomial(p.x, p.y, d);
                double worst = 0.0;
                for (std::size_t i = 0; i < p.x.size(); ++i)
                    worst = std::max(worst, std::fabs(m.evaluate(p.x[i]) - p.y[i]) / std::fabs(p.y[i]));
                CHECK(worst <= 1e-9);
            }
    }
    SUBCASE("underdetermined") {
        const std::vector<std::vector<double>> x{{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}, {5, 1, 2, 2, 9}};
        const std::vector<double> y{1, 2, 3};
        try {
            fit_polynomial(x, y, 2);
            FAIL("expected UnderdeterminedFit");
        } catch (const UnderdeterminedFit& e) {
            CHECK(std::string(e.what()).find("degree 2") != std::string::npos);
        }
    }
    SUBCASE("singular system") {
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        for (int i = 1; i <= 10; ++i) {
            x.push_back({double(i), double(2 * i)});
            y.push_back(i);
        }
        CHECK_THROWS_AS(fit_polynomial(x, y, 1), SingularSystem);
        for (auto& r : x) r[1] = 7.0;
        CHECK_THROWS_WITH_AS(fit_polynomial(x, y, 1), doctest::Contains("constant features: x2"), SingularSystem);
    }
    SUBCASE("row order does not change the fit") {
        const auto p = testing::planted_problem(2, 120, 0.02, 9);
        const auto a = fit_polynomial(p.x, p.y, 2);
        std::vector<std::size_t> order(p.x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), std::mt19937_64(3));
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        for (auto i : order) {
            x.push_back(p.x[i]);
            y.push_back(p.y[i]);
        }
        const auto b = fit_polynomial(x, y, 2);
        const std::vector<double> probe{3, 7, 11, 2, 5};
        CHECK(a.evaluate(probe) == doctest::Approx(b.evaluate(probe)).epsilon(1e-9));
        CHECK(max_abs_diff(a.raw_coefficients(), b.raw_coefficients()) <= 1e-9);
    }
}

TEST_CASE("k-fold selection") {
    SUBCASE("noiseless cubic selects degree 3") {
        const auto p = testing::planted_problem(3, 200, 0.0, 21);
        const auto sel = kfold_select_polynomial(p.x, p.y, kDegrees, 5);
        CHECK(sel.model.degree == 3);
        REQUIRE(sel.scores.size() == 3);
        CHECK(sel.scores[2].fold_mse.size() == 5);
        CHECK(sel.model.cv_score == sel.scores[2].cv_mse);
    }
    SUBCASE("mildly noisy cubic among degrees 1 to 4 selects degree 3") {
        const std::array<int, 4> four{1, 2, 3, 4};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto p = testing::planted_problem(3, 240, 0.005, 60 + seed);
            CHECK(kfold_select_polynomial(p.x, p.y, four, 5, seed).model.degree == 3);
        }
    }
    SUBCASE("noiseless linear ties resolve to the lowest degree") {
        const std::array<int, 2> one_two{1, 2};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto p = testing::planted_problem(1, 200, 0.0, 4 + seed);
            CHECK(kfold_select_polynomial(p.x, p.y, one_two, 2, seed).model.degree == 1);
            CHECK(kfold_select_polynomial(p.x, p.y, kDegrees, 2, seed).model.degree == 1);
        }
    }
    SUBCASE("property: the winner is within the tie tolerance of every candidate") {
        for (int t = 0; t < 20; ++t) {
            const auto p = testing::planted_problem(1 + t % 3, 150, 0.03, 900 + static_cast<std::uint64_t>(t));
            const auto sel = kfold_select_polynomial(p.x, p.y, kDegrees, 5, static_cast<std::uint64_t>(t));
            double mean = 0.0, var = 0.0;
            for (double v : p.y) mean += v / double(p.y.size());
            for (double v : p.y) var += (v - mean) * (v - mean) / double(p.y.size());
            const double chosen = sel.model.cv_score;
            for (const auto& s : sel.scores) CHECK(chosen <= s.cv_mse + 1e-9 * chosen + 1e-12 * var);
        }
    }
    SUBCASE("noisy planted degree is usually recovered") {
        int correct = 0;
        for (int t = 0; t < 30; ++t) {
            const int d = 1 + t % 3;
            const auto p = testing::planted_problem(d, 200, 0.02, 500 + t);
            if (kfold_select_polynomial(p.x, p.y, kDegrees, 5, t).model.degree == d) ++correct;
        }
        CHECK(correct >= 28);
    }
    SUBCASE("same seed, same folds") {
        const auto p = testing::planted_problem(2, 80, 0.02, 1);
        const auto a = kfold_select_polynomial(p.x, p.y, kDegrees, 4, 99);
        const auto b = kfold_select_polynomial(p.x, p.y, kDegrees, 4, 99);
        for (std::size_t i = 0; i < a.scores.size(); ++i) CHECK(a.scores[i].fold_mse == b.scores[i].fold_mse);
    }
    SUBCASE("invalid k") {
        const auto p = testing::planted_problem(1, 20, 0.0, 1);
        CHECK_THROWS_AS(kfold_select_polynomial(p.x, p.y, kDegrees, 1), ModelError);
        CHECK_THROWS_AS(kfold_select_polynomial(p.x, p.y, kDegrees, 21), UnderdeterminedFit);
    }
    SUBCASE("fold too small for the degree names degree and fold") {
        const auto p = testing::planted_problem(1, 30, 0.0, 1);
        CHECK_THROWS_WITH_AS(kfold_select_polynomial(p.x, p.y, kDegrees, 5), doctest::Contains("degree 3, fold 1/5"),
                             UnderdeterminedFit);
    }
}

TEST_CASE("prediction") {
    SUBCASE("training rows of an exact fit are reproduced") {
        const auto p = testing::planted_problem(2, 100, 0.0, 12);
        const auto m = fit_polynomial(p.x, p.y, 2);
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            const auto pr = predict_features(m, p.x[i]);
            CHECK_FALSE(pr.clamped);
            CHECK(std::fabs(pr.value - p.y[i]) <= 1e-9 * std::fabs(p.y[i]));
        }
    }
    RegressionModel m;
    m.target = CostTarget::area;
    m.pe_type = PEType::INT16;
    m.feature_names = {"pe_count", "ifmap_spad_B", "filter_spad_B", "psum_spad_B", "glb_B"};
    m.feature_means.assign(5, 0.0);
    m.feature_scales.assign(5, 1.0);
    m.coefficients = {-0.3, 0, 0, 0, 0, 0};
    AcceleratorConfig cfg{4, 4, 12, 224, 24, 65536, 16};
    const auto p = predict(m, cfg);
    CHECK(p.clamped);
    CHECK(p.value == kDefaultPredictionFloor);
    m.coefficients[0] = 0.3;
    CHECK_FALSE(predict(m, cfg).clamped);
    CHECK(predict(m, cfg).value == doctest::Approx(0.3));
    cfg.pe_type = PEType::FP32;
    CHECK_THROWS_AS(predict(m, cfg), ModelError);
}

TEST_CASE("model files") {
    const auto ds = generate_oracle_dataset(80, kPETypesByCost, 7);
    auto sel = kfold_select(ds, CostTarget::power, PEType::LightPE2, kDegrees, 5);
    const auto text = serialize_model(sel.model);
    const auto back = load_model(text);
    CHECK(back.target == CostTarget::power);
    CHECK(back.pe_type == PEType::LightPE2);
    CHECK(back.degree == sel.model.degree);
    CHECK(back.coefficients == sel.model.coefficients);
    CHECK(back.feature_means == sel.model.feature_means);
    CHECK(back.feature_scales == sel.model.feature_scales);
    CHECK(back.cv_score == sel.model.cv_score);
    CHECK(serialize_model(back) == text);

    CHECK_THROWS_AS(load_model("target = power\n"), ModelError);
    CHECK_THROWS_AS(load_model(text + "bogus = 1\n"), ParseError);
    auto wrong = text;
    wrong.replace(wrong.find("degree = "), 10, "degree = 9");
    CHECK_THROWS_AS(load_model(wrong), ModelError);
}

TEST_CASE("synthesis dataset CSV") {
    const auto ds = generate_oracle_dataset(10, kPETypesByCost, 3);
    CHECK(ds.rows.size() == 40);
    CHECK(ds.for_type(PEType::INT16).size() == 10);
    const auto csv = write_synth_csv(ds);
    CHECK(csv.rfind(std::string(kSynthCsvHeader), 0) == 0);
    const auto back = load_synth_csv(csv);
    REQUIRE(back.rows.size() == ds.rows.size());
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
        CHECK(back.rows[i].power_mW == ds.rows[i].power_mW);
        CHECK(back.rows[i].area_mm2 == ds.rows[i].area_mm2);
        CHECK(cost_features(back.rows[i].cfg) == cost_features(ds.rows[i].cfg));
    }
    SUBCASE("columns by name in any order") {
        const auto r = load_synth_csv("area_mm2,power_mW,pe_type,glb_B,psum_spad_B,filter_spad_B,ifmap_spad_B,pe_cols,pe_rows\n"
                                      "1.5,20,int16,65536,24,224,12,14,12\n");
        CHECK(r.rows.at(0).cfg.rows == 12);
        CHECK(r.rows.at(0).area_mm2 == 1.5);
    }
    SUBCASE("missing column is named") {
        CHECK_THROWS_WITH_AS(load_synth_csv("pe_rows,pe_cols,ifmap_spad_B,filter_spad_B,psum_spad_B,pe_type,power_mW,area_mm2\n"),
                             doctest::Contains("glb_B"), InputError);
    }
    SUBCASE("bad values") {
        const std::string h = std::string(kSynthCsvHeader) + "\n";
        CHECK_THROWS_AS(load_synth_csv(h + "4,4,12,224,24,65536,int16,-1,1\n"), ParseError);
        CHECK_THROWS_AS(load_synth_csv(h + "0,4,12,224,24,65536,int16,1,1\n"), ParseError);
        CHECK_THROWS_AS(load_synth_csv(h + "4,4,12,224,24,65536,int8,1,1\n"), ParseError);
        CHECK_THROWS_AS(load_synth_csv(h + "4,4,12\n"), ParseError);
    }
}

TEST_CASE("synthetic oracle") {
    AcceleratorConfig c{12, 14, 12, 224, 24, 108 * 1024, 16};
    SUBCASE("deterministic and seed dependent") {
        CHECK(synth_oracle(c, 1).power_mW == synth_oracle(c, 1).power_mW);
        CHECK(synth_oracle(c, 1).area_mm2 != synth_oracle(c, 2).area_mm2);
    }
    SUBCASE("noise stays within two percent") {
        for (std::uint64_t s = 0; s < 200; ++s) {
            const auto n = synth_oracle(c, s);
            const auto clean = synth_oracle_noiseless(c);
            CHECK(std::fabs(n.power_mW / clean.power_mW - 1.0) <= 0.02 + 1e-15);
            CHECK(std::fabs(n.area_mm2 / clean.area_mm2 - 1.0) <= 0.02 + 1e-15);
        }
    }
    SUBCASE("cost increases with PE type at equal shape") {
        double prev_area = 0.0, prev_power = 0.0;
        for (auto t : kPETypesByCost) {
            c.pe_type = t;
            const auto s = synth_oracle_noiseless(c);
            CHECK(s.area_mm2 > prev_area);
            CHECK(s.power_mW > prev_power);
            prev_area = s.area_mm2;
            prev_power = s.power_mW;
        }
    }
    SUBCASE("degree-2 fits generalize") {
        const auto ds = generate_oracle_dataset(200, kPETypesByCost, 11);
        const std::array<int, 1> two{2};
        for (auto t : kPETypesByCost)
            for (auto target : {CostTarget::power, CostTarget::area}) {
                const auto sel = kfold_select(ds, target, t, two, 5);
                CHECK(sel.scores[0].cv_r2 >= 0.98);
                CHECK(kfold_select(ds, target, t, kDegrees, 5).model.degree == 2);
            }
    }
}
