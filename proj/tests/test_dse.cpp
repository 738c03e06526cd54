#include <doctest.h>

#include <algorithm>
#include <random>

#include "accelppa/dse.hpp"
#include "accelppa/text.hpp"

using namespace accelppa;

namespace {

SweepSpec twelve_point_spec() {
    SweepSpec s;
    s.rows = {8, 12};
    s.cols = {8, 14, 16};
    s.ifmap_spad_B = {24};
    s.filter_spad_B = {224};
    s.psum_spad_B = {32};
    s.glb_B = {128 * 1024, 256 * 1024};
    s.bw_Bpc = {16};
    s.pe_type = {PEType::INT16};
    return s;
}

// Non-dominated set by pairwise comparison; among equal objectives the lowest index survives.
std::vector<std::size_t> brute_force_front(const std::vector<Objectives>& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < p.size() && keep; ++j) {
            if (i == j) continue;
            const bool ge = p[j].perf_per_area >= p[i].perf_per_area && p[j].energy_J <= p[i].energy_J;
            const bool strict = p[j].perf_per_area > p[i].perf_per_area || p[j].energy_J < p[i].energy_J;
            if (ge && (strict || j < i)) keep = false;
        }
        if (keep) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return p[a].perf_per_area > p[b].perf_per_area; });
    return out;
}

DesignPoint synthetic_point(PEType t, double ppa, double energy, std::int64_t rows = 4) {
    DesignPoint p;
    p.cfg.rows = rows;
    p.cfg.cols = 4;
    p.cfg.pe_type = t;
    p.feasible = true;
    p.perf_per_area = ppa;
    p.energy_J = energy;
    return p;
}

}  // namespace

TEST_CASE("sweep spec") {
    SUBCASE("cartesian order") {
        const auto s = twelve_point_spec();
        REQUIRE(s.cartesian_size() == 12);
        std::vector<AcceleratorConfig> pts;
        for (std::size_t i = 0; i < 12; ++i) pts.push_back(s.point(i));
        CHECK(std::is_sorted(pts.begin(), pts.end(), config_less));
        CHECK(pts.front().rows == 8);
        CHECK(pts.front().cols == 8);
        CHECK(pts.front().glb_B == 128 * 1024);
        CHECK(pts[1].glb_B == 256 * 1024);
        CHECK(pts[2].cols == 14);
        CHECK(pts.back().rows == 12);
        CHECK(pts.back().cols == 16);
    }
    SUBCASE("file") {
        const auto s = load_sweep_spec(
            "network = resnet34\nrows = 8, 12\ncols = 8,14,16\nifmap_spad_B = 24\nfilter_spad_B = 224\n"
            "psum_spad_B = 32\nglb_B = 131072,262144\nbw_Bpc = 16\npe_type = int16\nmax_points = 5\n");
        CHECK(s.network == "resnet34");
        CHECK(s.cartesian_size() == 12);
        CHECK(s.max_points == 5u);
        CHECK(s.pe_type == std::vector<PEType>{PEType::INT16});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(load_sweep_spec("rows = 8\n"), ValidationError);  // other lists empty
        CHECK_THROWS_AS(load_sweep_spec("rows = 0\n"), ParseError);
        CHECK_THROWS_AS(load_sweep_spec("rows = 8\nrows = 9\n"), ParseError);
        CHECK_THROWS_AS(load_sweep_spec("depth = 8\n"), ParseError);
        CHECK_THROWS_AS(load_sweep_spec("pe_type = int8\n"), ParseError);
    }
}

TEST_CASE("sweep") {
    const auto net = builtin_network("vgg16");
    const auto cost = CostSource::oracle(1);
    const EnergyTables tables;
    auto spec = twelve_point_spec();

    SUBCASE("one point per configuration in order") {
        const auto r = sweep(spec, net, cost, tables, 3);
        REQUIRE(r.points.size() == 12);
        CHECK_FALSE(r.truncated);
        for (std::size_t i = 0; i < 12; ++i) {
            CHECK(r.points[i].cfg == spec.point(i));
            const auto& p = r.points[i];
            REQUIRE(p.feasible);
            CHECK(p.latency_s == doctest::Approx(double(p.total_cycles) / p.cfg.clock_hz));
            CHECK(p.perf_per_area == doctest::Approx(1.0 / p.latency_s / p.area_mm2));
            CHECK(p.energy_J > 0);
            CHECK(p.power_mW > 0);
            CHECK_FALSE(p.norm_ppa.has_value());
        }
    }
    SUBCASE("thread count does not change results") {
        const auto a = sweep(spec, net, cost, tables, 1);
        const auto b = sweep(spec, net, cost, tables, 4);
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(a.points[i].energy_J == b.points[i].energy_J);
            CHECK(a.points[i].perf_per_area == b.points[i].perf_per_area);
            CHECK(a.points[i].area_mm2 == b.points[i].area_mm2);
        }
    }
    SUBCASE("infeasible points are reported with the resource") {
        spec.filter_spad_B = {2, 224};
        const auto r = sweep(spec, net, cost, tables);
        REQUIRE(r.points.size() == 24);
        CHECK_FALSE(r.points[0].feasible);
        CHECK(r.points[0].reason.find("filter_spad_B") != std::string::npos);
        CHECK(r.points[2].feasible);
    }
    SUBCASE("max_points truncates in order") {
        spec.max_points = 5;
        const auto r = sweep(spec, net, cost, tables);
        CHECK(r.truncated);
        CHECK(r.space_size == 12);
        REQUIRE(r.points.size() == 5);
        CHECK(r.points[4].cfg == spec.point(4));
    }
    SUBCASE("fitted models must cover every swept type") {
        const auto ds = generate_oracle_dataset(60, kPETypesByCost, 2);
        const std::array<int, 1> two{2};
        std::vector<RegressionModel> models;
        for (auto target : {CostTarget::power, CostTarget::area})
            models.push_back(kfold_select(ds, target, PEType::INT16, two, 5).model);
        models.push_back(kfold_select(ds, CostTarget::power, PEType::FP32, two, 5).model);
        const auto fitted = CostSource::fitted(models);
        CHECK_NOTHROW(sweep(spec, net, fitted, tables));
        spec.pe_type = {PEType::INT16, PEType::FP32};
        CHECK_THROWS_WITH_AS(sweep(spec, net, fitted, tables), doctest::Contains("missing area model for pe_type fp32"),
                             ModelError);
    }
}

TEST_CASE("pareto front") {
    SUBCASE("hand example") {
        const std::vector<Objectives> p{{1, 1}, {2, 3}, {3, 2}, {0.5, 4}};
        const auto r = pareto_front(p);
        CHECK(r.frontier == std::vector<std::size_t>{2, 0});
        CHECK(r.duplicates.empty());
    }
    SUBCASE("singleton") {
        const std::vector<Objectives> p{{1, 1}};
        CHECK(pareto_front(p).frontier == std::vector<std::size_t>{0});
    }
    SUBCASE("duplicates keep the first") {
        const std::vector<Objectives> p{{2, 2}, {1, 1}, {2, 2}, {2, 2}, {1, 3}};
        const auto r = pareto_front(p);
        CHECK(r.frontier == std::vector<std::size_t>{0, 1});
        CHECK(r.duplicates == std::vector<std::size_t>{2, 3});
    }
    SUBCASE("empty") { CHECK_THROWS_AS(pareto_front(std::span<const Objectives>{}), std::invalid_argument); }
    SUBCASE("property: matches brute force") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 300; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 60);
            const int grid = 2 + static_cast<int>(rng() % 20);  // small grids force ties
            std::vector<Objectives> p;
            for (int i = 0; i < n; ++i) p.push_back({double(rng() % grid), double(rng() % grid)});
            CHECK(pareto_front(p).frontier == brute_force_front(p));
        }
    }
    SUBCASE("property: ten thousand points") {
        std::mt19937_64 rng(10);
        for (int grid : {50, 1 << 20}) {
            std::vector<Objectives> p;
            for (int i = 0; i < 10000; ++i) p.push_back({double(rng() % grid), double(rng() % grid)});
            CHECK(pareto_front(p).frontier == brute_force_front(p));
        }
    }
    SUBCASE("design points: only feasible ones, flags set") {
        std::vector<DesignPoint> pts{synthetic_point(PEType::INT16, 1, 1), synthetic_point(PEType::INT16, 5, 0.1),
                                     synthetic_point(PEType::INT16, 2, 2), synthetic_point(PEType::FP32, 1, 1)};
        pts[1].feasible = false;
        const auto r = pareto(pts);
        CHECK(r.frontier == std::vector<std::size_t>{2, 0});
        CHECK(r.duplicates == std::vector<std::size_t>{3});
        CHECK(pts[0].on_frontier);
        CHECK(pts[2].on_frontier);
        CHECK_FALSE(pts[1].on_frontier);
        CHECK(pts[3].duplicate);
        for (auto& p : pts) p.feasible = false;
        CHECK_THROWS_AS(pareto(pts), ValidationError);
    }
}

TEST_CASE("normalization") {
    std::vector<DesignPoint> pts{synthetic_point(PEType::INT16, 4, 2), synthetic_point(PEType::LightPE1, 8, 1),
                                 synthetic_point(PEType::INT16, 3, 1), synthetic_point(PEType::FP32, 2, 4)};
    SUBCASE("baseline and ratios") {
        CHECK(normalize(pts) == 0);
        CHECK(*pts[0].norm_ppa == 1.0);
        CHECK(*pts[0].norm_energy == 1.0);
        CHECK(*pts[1].norm_ppa == 2.0);
        CHECK(*pts[1].norm_energy == 0.5);
        CHECK(*pts[3].norm_ppa == 0.5);
    }
    SUBCASE("ties go to lower energy then to the smaller configuration") {
        pts[2].perf_per_area = 4;
        CHECK(select_baseline(pts) == 2);
        pts[2].energy_J = 2;
        pts[2].cfg.rows = 2;
        CHECK(select_baseline(pts) == 2);
        pts[2].cfg.rows = 9;
        CHECK(select_baseline(pts) == 0);
    }
    SUBCASE("infeasible INT16 points are never the baseline") {
        pts[0].feasible = false;
        CHECK(normalize(pts) == 2);
        CHECK_FALSE(pts[0].norm_ppa.has_value());
    }
    SUBCASE("no baseline") {
        pts[0].cfg.pe_type = PEType::LightPE2;
        pts[2].cfg.pe_type = PEType::LightPE2;
        CHECK_THROWS_AS(normalize(pts), NoBaseline);
        CHECK_THROWS_WITH(normalize(pts), doctest::Contains("no INT16 baseline"));
    }
    SUBCASE("summary") {
        normalize(pts);
        const auto s = summarize(pts);
        REQUIRE(s.size() == 3);
        CHECK(s[0].pe_type == PEType::LightPE1);
        CHECK(s[0].ppa_gain == 2.0);
        CHECK(s[0].energy_gain == 2.0);
        CHECK(s[1].pe_type == PEType::INT16);
        CHECK(s[1].index == 0);
        CHECK(s[2].pe_type == PEType::FP32);
        CHECK(s[2].norm_ppa < 1.0);
    }
}

TEST_CASE("oracle sweep summaries") {
    const auto net = builtin_network("vgg16");
    const EnergyTables tables;
    auto spec = twelve_point_spec();
    SUBCASE("INT16-only sweep reports exactly the baseline") {
        auto r = sweep(spec, net, CostSource::oracle(1), tables);
        const auto b = normalize(r.points);
        const auto s = summarize(r.points);
        REQUIRE(s.size() == 1);
        CHECK(s[0].index == b);
        CHECK(s[0].ppa_gain == 1.0);
        CHECK(s[0].energy_gain == 1.0);
    }
    SUBCASE("FP32 never beats the INT16 baseline at equal shapes") {
        spec.pe_type = {PEType::INT16, PEType::FP32};
        auto r = sweep(spec, net, CostSource::oracle(1), tables);
        normalize(r.points);
        const auto s = summarize(r.points);
        REQUIRE(s.size() == 2);
        CHECK(s[1].pe_type == PEType::FP32);
        CHECK(s[1].norm_ppa < 1.0);
    }
}
