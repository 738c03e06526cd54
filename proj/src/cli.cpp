#include "accelppa/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "accelppa/costmodel.hpp"
#include "accelppa/error.hpp"
#include "accelppa/svg.hpp"
#include "accelppa/text.hpp"

namespace accelppa::cli {

namespace fs = std::filesystem;
using text::format_double;

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["tool_version"] = std::string(kVersion);
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

namespace {

void write_manifest(const RunManifest& m, const std::string& output) {
    text::write_file(output + ".manifest.json", m.to_json());
}

void write_output(RunManifest& m, const std::string& path, std::string_view content) {
    text::write_file(path, content);
    m.outputs.push_back(path);
}

// Writes the same manifest next to every output.
void finish(const RunManifest& m) {
    for (const auto& o : m.outputs) write_manifest(m, o);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

EnergyTables load_tables(const std::optional<std::string>& file, RunManifest& m) {
    if (!file) return EnergyTables{};
    m.inputs.push_back(*file);
    return load_energy_tables(text::read_file(*file), *file);
}

std::vector<RegressionModel> load_models(const std::vector<std::string>& files, RunManifest& m) {
    std::vector<RegressionModel> models;
    for (const auto& f : files) {
        m.inputs.push_back(f);
        models.push_back(load_model(text::read_file(f), f));
    }
    return models;
}

}  // namespace

std::string layer_csv(const NetworkConfig& net, const NetworkPerf& perf, const EnergyTable& table) {
    std::ostringstream out;
    out << kLayerCsvHeader << '\n';
    const auto row = [&](const std::string& name, const PerfResult& p) {
        const auto& a = p.access;
        out << csv_field(name) << ',' << a.mac_ops << ',' << p.compute_cycles << ',' << p.memory_cycles << ','
            << p.total_cycles << ',' << format_double(p.utilization) << ',' << a.glb_ifmap_r << ','
            << a.glb_filter_r << ',' << a.glb_psum_r << ',' << a.glb_psum_w << ',' << a.dram_bytes << ','
            << format_double(layer_energy(a, table)) << '\n';
    };
    for (std::size_t i = 0; i < net.layers.size(); ++i) row(net.layers[i].name, perf.layers[i]);
    // Summed per layer so the TOTAL row equals the column sum of the rows above.
    double energy = 0.0;
    for (const auto& p : perf.layers) energy += layer_energy(p.access, table);
    const auto& t = perf.total;
    const auto& a = t.access;
    out << "TOTAL," << a.mac_ops << ',' << t.compute_cycles << ',' << t.memory_cycles << ',' << t.total_cycles << ','
        << format_double(t.utilization) << ',' << a.glb_ifmap_r << ',' << a.glb_filter_r << ',' << a.glb_psum_r
        << ',' << a.glb_psum_w << ',' << a.dram_bytes << ',' << format_double(energy) << '\n';
    return out.str();
}

std::string design_csv(const std::vector<DesignPoint>& points, const std::vector<std::size_t>& subset) {
    std::ostringstream out;
    out << kDesignCsvHeader << '\n';
    const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (auto i : subset) {
        const auto& p = points[i];
        const auto& c = p.cfg;
        out << c.rows << ',' << c.cols << ',' << c.ifmap_spad_B << ',' << c.filter_spad_B << ',' << c.psum_spad_B
            << ',' << c.glb_B << ',' << format_double(c.bw_Bpc) << ',' << format_double(c.clock_hz) << ','
            << to_string(c.pe_type) << ',' << c.mac_cycles << ',' << (p.feasible ? 1 : 0) << ','
            << csv_field(p.reason) << ',';
        if (p.feasible) {
            out << format_double(p.latency_s) << ',' << format_double(p.energy_J) << ',' << format_double(p.area_mm2)
                << ',' << format_double(p.power_mW) << ',' << format_double(p.perf_per_area) << ',';
        } else {
            out << ",,,,,";
        }
        out << opt(p.norm_ppa) << ',' << opt(p.norm_energy) << ',' << (p.on_frontier ? 1 : 0) << ','
            << (p.feasible ? format_double(p.energy_power_J) : std::string()) << '\n';
    }
    return out.str();
}

std::string design_csv(const std::vector<DesignPoint>& points) {
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return design_csv(points, all);
}

void cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
    RunManifest m{"evaluate", {o.arch_file}, o.seed, {}, {}};
    const auto cfg = load_accelerator_config(text::read_file(o.arch_file), o.arch_file);
    const auto net = resolve_network(o.network);
    m.inputs.push_back(o.network);
    const auto tables = load_tables(o.energy_file, m);
    const auto models = load_models(o.model_files, m);
    m.parameters["oracle"] = o.oracle ? "true" : "false";

    const auto vc = validate_config(cfg, net);
    const auto perf = network_performance(net, vc);
    const auto& table = tables.at(cfg.pe_type);
    write_output(m, o.out_csv, layer_csv(net, perf, table));

    double energy = 0.0;
    for (const auto& p : perf.layers) energy += layer_energy(p.access, table);
    const double latency = static_cast<double>(perf.total.total_cycles) / cfg.clock_hz;
    const auto& t = perf.total;
    out << "network        " << net.name << " (" << net.layers.size() << " layers)\n"
        << "pe_type        " << display_name(cfg.pe_type) << " on " << cfg.rows << "x" << cfg.cols << " PEs\n"
        << "macs           " << t.access.mac_ops << "\n"
        << "compute_cycles " << t.compute_cycles << "\n"
        << "memory_cycles  " << t.memory_cycles << "\n"
        << "total_cycles   " << t.total_cycles << "\n"
        << "latency_s      " << format_double(latency) << "\n"
        << "inferences/s   " << format_double(1.0 / latency) << "\n"
        << "utilization    " << format_double(t.utilization) << "\n"
        << "dram_bytes     " << t.access.dram_bytes << "\n"
        << "energy_J       " << format_double(energy) << "\n";

    if (o.oracle || !models.empty()) {
        const auto cost = o.oracle ? CostSource::oracle(o.seed) : CostSource::fitted(models);
        cost.require_types(std::span(&cfg.pe_type, 1));
        const auto est = cost.estimate(cfg);
        out << "area_mm2       " << format_double(est.area_mm2) << (est.clamped ? " (clamped)" : "") << "\n"
            << "power_mW       " << format_double(est.power_mW) << "\n"
            << "energy_power_J " << format_double(power_based_energy(est.power_mW, t.total_cycles, cfg.clock_hz)) << "\n"
            << "perf_per_area  " << format_double((1.0 / latency) / est.area_mm2) << "\n";
    }
    finish(m);
}

void cmd_fit(const FitOptions& o, std::ostream& out) {
    RunManifest m{"fit", {o.dataset_csv}, o.seed, {}, {}};
    m.parameters = {{"target", std::string(to_string(o.target))},
                    {"pe_type", std::string(to_string(o.pe_type))},
                    {"degrees", join_ints(o.degrees)},
                    {"k", std::to_string(o.k)}};
    const auto ds = load_synth_csv(text::read_file(o.dataset_csv), o.dataset_csv);
    const auto sel = kfold_select(ds, o.target, o.pe_type, o.degrees, o.k, o.seed);

    std::ostringstream report;
    report << "# " << to_string(o.target) << " model for " << to_string(o.pe_type) << ", " << o.k
           << "-fold cross validation over " << ds.for_type(o.pe_type).size() << " rows\n"
           << "degree,cv_mse,cv_r2\n";
    for (const auto& s : sel.scores)
        report << s.degree << ',' << format_double(s.cv_mse) << ',' << format_double(s.cv_r2) << '\n';
    report << "selected_degree = " << sel.model.degree << '\n'
           << "train_rmse = " << format_double(sel.model.train_rmse) << '\n';

    write_output(m, o.out_model, serialize_model(sel.model));
    write_output(m, o.out_model + ".report", report.str());
    out << report.str();
    finish(m);
}

void cmd_sweep(const SweepOptions& o, std::ostream& out) {
    RunManifest m{"sweep", {o.spec_file}, o.seed, {}, {}};
    auto spec = load_sweep_spec(text::read_file(o.spec_file), o.spec_file);
    if (o.network) spec.network = *o.network;
    m.inputs.push_back(spec.network);
    const auto net = resolve_network(spec.network);
    const auto tables = load_tables(o.energy_file, m);
    if (o.oracle == !o.model_files.empty())
        throw InputError("sweep needs exactly one of --oracle or --models");
    const auto cost = o.oracle ? CostSource::oracle(o.seed) : CostSource::fitted(load_models(o.model_files, m));
    m.parameters["cost"] = o.oracle ? "oracle" : "models";

    auto result = sweep(spec, net, cost, tables, o.threads);
    auto& points = result.points;
    const auto baseline = normalize(points);
    const auto frontier = pareto(points);

    const auto frontier_path = o.frontier_csv.value_or(
        (fs::path(o.out_csv).parent_path() / (fs::path(o.out_csv).stem().string() + ".frontier.csv")).string());
    write_output(m, o.out_csv, design_csv(points));
    write_output(m, frontier_path, design_csv(points, frontier.frontier));
    if (o.out_svg)
        write_output(m, *o.out_svg, scatter_svg(points, net.name + ": normalized perf/area vs energy"));

    std::size_t feasible = 0;
    for (const auto& p : points) feasible += p.feasible ? 1 : 0;
    out << "network   " << net.name << "\n"
        << "points    " << points.size() << " of " << result.space_size << (result.truncated ? " (truncated)" : "")
        << ", " << feasible << " feasible\n"
        << "frontier  " << frontier.frontier.size() << " points\n";
    const auto& b = points[baseline].cfg;
    out << "baseline  INT16 " << b.rows << "x" << b.cols << " ifmap=" << b.ifmap_spad_B << " filter=" << b.filter_spad_B
        << " psum=" << b.psum_spad_B << " glb=" << b.glb_B << " bw=" << format_double(b.bw_Bpc) << "\n";
    out << "type       norm_ppa  norm_energy  ppa_gain  energy_gain\n";
    for (const auto& s : summarize(points)) {
        out << display_name(s.pe_type) << std::string(11 - display_name(s.pe_type).size(), ' ')
            << format_double(s.norm_ppa) << "  " << format_double(s.norm_energy) << "  " << format_double(s.ppa_gain)
            << "  " << format_double(s.energy_gain) << "\n";
    }
    finish(m);
}

void cmd_gen_dataset(const DatasetOptions& o, std::ostream& out) {
    RunManifest m{"gen-dataset", {}, o.seed, {}, {}};
    std::vector<std::string> types;
    for (auto t : o.pe_types) types.emplace_back(to_string(t));
    m.parameters = {{"rows_per_type", std::to_string(o.rows_per_type)}, {"pe_types", join(types)}};
    const auto ds = generate_oracle_dataset(o.rows_per_type, o.pe_types, o.seed);
    write_output(m, o.out_csv, write_synth_csv(ds));
    out << "wrote " << ds.rows.size() << " oracle rows to " << o.out_csv << "\n";
    finish(m);
}

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv(std::string(kSeedEnvVar).c_str())) {
        try {
            return static_cast<std::uint64_t>(text::parse_int(env, std::string(kSeedEnvVar), 0));
        } catch (const InputError&) {
            throw InputError(std::string(kSeedEnvVar) + " must be an integer");
        }
    }
    return kDefaultSeed;
}

std::vector<PEType> parse_types(const std::string& csv) {
    std::vector<PEType> out;
    for (auto f : text::split(csv, ',')) out.push_back(parse_pe_type(f));
    return out;
}

std::vector<int> parse_degrees(const std::string& csv) {
    std::vector<int> out;
    for (auto f : text::split(csv, ',')) {
        const auto v = text::parse_int(f, "--degrees", 0);
        if (v < 1) throw InputError("--degrees entries must be >= 1");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytical power/performance/area modeling and design space exploration for spatial DNN accelerators"};
    app.name(args.empty() ? "accelppa" : fs::path(args.front()).filename().string());
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;

    EvaluateOptions ev;
    std::string ev_energy, ev_models;
    auto* evaluate = app.add_subcommand("evaluate", "Per-layer performance and energy of one configuration");
    evaluate->add_option("--arch", ev.arch_file, "Accelerator config file (key = value)")->required();
    evaluate->add_option("--network", ev.network, "vgg16, resnet34, resnet50, or a network file")->required();
    evaluate->add_option("--energy", ev_energy, "Energy table file");
    evaluate->add_option("--out", ev.out_csv, "Per-layer CSV output")->required();
    evaluate->add_flag("--oracle", ev.oracle, "Report area and power from the synthetic oracle");
    evaluate->add_option("--models", ev_models, "Comma-separated fitted model files for area and power");
    evaluate->add_option("--seed", seed, "Seed (default: $" + std::string(kSeedEnvVar) + " or 1)");

    FitOptions fo;
    std::string fit_target = "power", fit_type = "int16", fit_degrees = "1,2,3";
    auto* fit = app.add_subcommand("fit", "Fit a polynomial power or area model with k-fold degree selection");
    fit->add_option("--dataset", fo.dataset_csv, "Synthesis dataset CSV")->required();
    fit->add_option("--target", fit_target, "power or area")->capture_default_str();
    fit->add_option("--pe-type", fit_type, "fp32, int16, lightpe1, lightpe2")->capture_default_str();
    fit->add_option("--degrees", fit_degrees, "Candidate degrees")->capture_default_str();
    fit->add_option("--k", fo.k, "Number of folds")->capture_default_str();
    fit->add_option("--out", fo.out_model, "Model output file")->required();
    fit->add_option("--seed", seed, "Fold shuffle seed");

    SweepOptions so;
    std::string sw_models, sw_energy, sw_frontier, sw_svg, sw_network;
    auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive design space sweep with normalization and Pareto frontier");
    sweep_cmd->add_option("--spec", so.spec_file, "Sweep spec file")->required();
    sweep_cmd->add_option("--network", sw_network, "Override the spec's network");
    sweep_cmd->add_flag("--oracle", so.oracle, "Use the synthetic oracle for area and power");
    sweep_cmd->add_option("--models", sw_models, "Comma-separated fitted model files");
    sweep_cmd->add_option("--energy", sw_energy, "Energy table file");
    sweep_cmd->add_option("--out", so.out_csv, "Design-point CSV output")->required();
    sweep_cmd->add_option("--frontier", sw_frontier, "Frontier CSV output (default: <out> with .csv replaced by .frontier.csv)");
    sweep_cmd->add_option("--svg", sw_svg, "SVG scatter plot output");
    sweep_cmd->add_option("--threads", so.threads, "Worker threads (0 = hardware concurrency)");
    sweep_cmd->add_option("--seed", seed, "Oracle seed");

    DatasetOptions dso;
    std::string ds_types = "fp32,int16,lightpe1,lightpe2";
    auto* gen = app.add_subcommand("gen-dataset", "Write a synthesis-style dataset labelled by the synthetic oracle");
    gen->add_option("--rows-per-type", dso.rows_per_type, "Rows per PE type")->capture_default_str();
    gen->add_option("--pe-types", ds_types, "Comma-separated PE types")->capture_default_str();
    gen->add_option("--out", dso.out_csv, "Dataset CSV output")->required();
    gen->add_option("--seed", seed, "Oracle seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    const auto split_files = [](const std::string& s) {
        std::vector<std::string> files;
        if (s.empty()) return files;
        for (auto f : text::split(s, ',')) files.emplace_back(f);
        return files;
    };

    try {
        const auto the_seed = seed ? *seed : default_seed();
        if (evaluate->parsed()) {
            ev.seed = the_seed;
            if (!ev_energy.empty()) ev.energy_file = ev_energy;
            ev.model_files = split_files(ev_models);
            cmd_evaluate(ev, out);
        } else if (fit->parsed()) {
            fo.seed = the_seed;
            fo.target = parse_cost_target(fit_target);
            fo.pe_type = parse_pe_type(fit_type);
            fo.degrees = parse_degrees(fit_degrees);
            cmd_fit(fo, out);
        } else if (sweep_cmd->parsed()) {
            so.seed = the_seed;
            so.model_files = split_files(sw_models);
            if (!sw_energy.empty()) so.energy_file = sw_energy;
            if (!sw_frontier.empty()) so.frontier_csv = sw_frontier;
            if (!sw_svg.empty()) so.out_svg = sw_svg;
            if (!sw_network.empty()) so.network = sw_network;
            cmd_sweep(so, out);
        } else if (gen->parsed()) {
            dso.seed = the_seed;
            dso.pe_types = parse_types(ds_types);
            cmd_gen_dataset(dso, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kModelError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kOk;
}

}  // namespace accelppa::cli
