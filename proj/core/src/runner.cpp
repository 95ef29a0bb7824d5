#include "entdiag/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "entdiag/chaos.hpp"
#include "entdiag/entanglement.hpp"
#include "entdiag/io.hpp"
#include "entdiag/rng.hpp"
#include "entdiag/threadpool.hpp"
#include "entdiag/version.hpp"

namespace entdiag {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Grow: return "grow";
        case ExperimentKind::Optimize: return "optimize";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Diagnose: return "diagnose";
        case ExperimentKind::Sff: return "sff";
        case ExperimentKind::Spread: return "spread";
        case ExperimentKind::Tables: return "tables";
    }
    throw std::logic_error("unreachable");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    for (ExperimentKind k : {ExperimentKind::Grow, ExperimentKind::Optimize, ExperimentKind::Sweep,
                             ExperimentKind::Diagnose, ExperimentKind::Sff, ExperimentKind::Spread,
                             ExperimentKind::Tables})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown experiment kind: " + name);
}

HamiltonianModel HamiltonianConfig::build(int n) const {
    switch (kind) {
        case HamiltonianKind::NNIsing: return build_nn_ising(n, g);
        case HamiltonianKind::LongRangeIsing: return build_long_range_ising(n, alpha, g);
        case HamiltonianKind::SYK4: return build_syk4(n, seed);
    }
    throw std::logic_error("unreachable");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"experiment", "n", "layers", "depths", "architecture", "hamiltonian",
                       "seeds", "master_seed", "optimizer", "out_dir", "workers", "entropy_kinds",
                       "taus", "times", "probe", "operator", "n_list", "success_threshold",
                       "sff_n_convention"},
                   "config");
    ExperimentConfig cfg;
    if (!j.contains("experiment")) throw ConfigError("config requires an 'experiment' field");
    cfg.experiment = experiment_kind_from_string(j.at("experiment").get<std::string>());
    cfg.n = get_or(j, "n", cfg.n);
    cfg.layers = get_or(j, "layers", cfg.layers);
    cfg.depths = get_or(j, "depths", cfg.depths);
    if (j.contains("architecture")) {
        const auto& a = j.at("architecture");
        reject_unknown(a, {"type", "p"}, "architecture");
        try {
            cfg.architecture = architecture_from_string(a.at("type").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        cfg.p = get_or(a, "p", cfg.architecture == Architecture::Stochastic ? 0.5 : 1.0);
    }
    if (j.contains("hamiltonian")) {
        const auto& h = j.at("hamiltonian");
        reject_unknown(h, {"kind", "g", "alpha", "seed"}, "hamiltonian");
        try {
            cfg.hamiltonian.kind = hamiltonian_kind_from_string(h.at("kind").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        cfg.hamiltonian.g = get_or(h, "g", cfg.hamiltonian.g);
        cfg.hamiltonian.alpha = get_or(h, "alpha", cfg.hamiltonian.alpha);
        cfg.hamiltonian.seed = get_or(h, "seed", cfg.hamiltonian.seed);
    }
    cfg.seeds = get_or(j, "seeds", cfg.seeds);
    cfg.master_seed = get_or(j, "master_seed", cfg.master_seed);
    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        reject_unknown(o, {"eta", "max_steps", "record_every", "stop_grad_norm"}, "optimizer");
        cfg.optimizer.eta = get_or(o, "eta", cfg.optimizer.eta);
        cfg.optimizer.max_steps = get_or(o, "max_steps", cfg.optimizer.max_steps);
        cfg.optimizer.record_every = get_or(o, "record_every", cfg.optimizer.record_every);
        cfg.optimizer.stop_grad_norm = get_or(o, "stop_grad_norm", cfg.optimizer.stop_grad_norm);
    }
    cfg.out_dir = get_or(j, "out_dir", cfg.out_dir);
    cfg.workers = get_or(j, "workers", cfg.workers);
    if (j.contains("entropy_kinds")) {
        for (const auto& name : j.at("entropy_kinds")) {
            try {
                cfg.entropy_kinds.push_back(entropy_kind_from_string(name.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (j.contains("taus")) {
        const auto& t = j.at("taus");
        reject_unknown(t, {"max", "points"}, "taus");
        cfg.tau_max = get_or(t, "max", cfg.tau_max);
        cfg.tau_points = get_or(t, "points", cfg.tau_points);
    }
    cfg.times = get_or(j, "times", cfg.times);
    cfg.probe = get_or(j, "probe", cfg.probe);
    if (j.contains("operator")) {
        const auto& o = j.at("operator");
        reject_unknown(o, {"kind", "site", "pauli"}, "operator");
        cfg.spread_operator = get_or(o, "kind", cfg.spread_operator);
        cfg.operator_site = get_or(o, "site", cfg.operator_site);
        cfg.operator_pauli = get_or(o, "pauli", cfg.operator_pauli);
    }
    cfg.n_list = get_or(j, "n_list", cfg.n_list);
    cfg.success_threshold = get_or(j, "success_threshold", cfg.success_threshold);
    cfg.sff_n_convention = get_or(j, "sff_n_convention", cfg.sff_n_convention);
    if (cfg.sff_n_convention != "dim" && cfg.sff_n_convention != "qubits")
        throw ConfigError("sff_n_convention must be 'dim' or 'qubits'");
    if (cfg.probe != "x" && cfg.probe != "y" && cfg.probe != "z")
        throw ConfigError("probe must be one of x, y, z");
    if (cfg.operator_pauli != "x" && cfg.operator_pauli != "y" && cfg.operator_pauli != "z")
        throw ConfigError("operator.pauli must be one of x, y, z");
    if (cfg.spread_operator != "hamiltonian" && cfg.spread_operator != "pauli")
        throw ConfigError("operator.kind must be 'hamiltonian' or 'pauli'");
    if (cfg.seeds < 1) throw ConfigError("seeds must be positive");
    if (cfg.n < 2 || cfg.n % 2 != 0) throw ConfigError("n must be even and >= 2");
    if (cfg.layers < 0) throw ConfigError("layers must be non-negative");
    for (std::size_t d = 0; d < cfg.depths.size(); ++d) {
        if (cfg.depths[d] < 0) throw ConfigError("depths must be non-negative");
        if (d > 0 && cfg.depths[d] <= cfg.depths[d - 1])
            throw ConfigError("depths must be strictly increasing");
    }
    for (std::size_t t = 1; t < cfg.times.size(); ++t)
        if (cfg.times[t] <= cfg.times[t - 1]) throw ConfigError("times must be strictly increasing");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    return from_json_text(read_text_file(path));
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["experiment"] = to_string(experiment);
    j["n"] = n;
    j["layers"] = layers;
    if (!depths.empty()) j["depths"] = depths;
    j["architecture"] = {{"type", to_string(architecture)}, {"p", p}};
    j["hamiltonian"] = {{"kind", to_string(hamiltonian.kind)},
                        {"g", hamiltonian.g},
                        {"alpha", hamiltonian.alpha},
                        {"seed", hamiltonian.seed}};
    j["seeds"] = seeds;
    j["master_seed"] = master_seed;
    j["optimizer"] = {{"eta", optimizer.eta},
                      {"max_steps", optimizer.max_steps},
                      {"record_every", optimizer.record_every},
                      {"stop_grad_norm", optimizer.stop_grad_norm}};
    j["out_dir"] = out_dir;
    j["workers"] = workers;
    if (!entropy_kinds.empty()) {
        json kinds = json::array();
        for (EntropyKind k : entropy_kinds) kinds.push_back(to_string(k));
        j["entropy_kinds"] = kinds;
    }
    j["taus"] = {{"max", tau_max}, {"points", tau_points}};
    if (!times.empty()) j["times"] = times;
    j["probe"] = probe;
    j["operator"] = {{"kind", spread_operator}, {"site", operator_site}, {"pauli", operator_pauli}};
    if (!n_list.empty()) j["n_list"] = n_list;
    j["success_threshold"] = success_threshold;
    j["sff_n_convention"] = sff_n_convention;
    return j.dump(2);
}

std::string ExperimentConfig::config_hash() const {
    // hash excludes out_dir and workers: they do not change results
    json j = json::parse(to_json_text());
    j.erase("out_dir");
    j.erase("workers");
    return hex64(fnv1a64(j.dump()));
}

namespace {

int64_t unix_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

struct Manifest {
    std::string path;
    json body;

    static Manifest start(const std::string& out_dir, const std::string& hash) {
        Manifest m;
        m.path = out_dir + "/manifest.json";
        m.body = {{"config_hash", hash},
                  {"version", kVersion},
                  {"started_unix", unix_now()},
                  {"finished_unix", nullptr},
                  {"status", "running"},
                  {"tasks", json::array()},
                  {"outputs", json::array()}};
        m.flush();
        return m;
    }

    void task(const std::string& name, const std::string& status) {
        body["tasks"].push_back({{"name", name}, {"status", status}});
        flush();
    }

    void output(const std::string& name) { body["outputs"].push_back(name); }

    void finish(const std::string& status) {
        body["status"] = status;
        body["finished_unix"] = unix_now();
        flush();
    }

    void flush() const { write_text_file(path, body.dump(2) + "\n"); }
};

std::vector<EntropyKind> effective_kinds(const ExperimentConfig& cfg) {
    return cfg.entropy_kinds.empty() ? all_entropy_kinds() : cfg.entropy_kinds;
}

std::vector<uint64_t> derive_seeds(uint64_t master, int count) {
    std::vector<uint64_t> seeds(count);
    for (int i = 0; i < count; ++i) seeds[i] = rng::member_seed(master, i);
    return seeds;
}

std::vector<double> tau_grid(const ExperimentConfig& cfg) {
    if (cfg.tau_points < 2) throw ConfigError("taus.points must be at least 2");
    std::vector<double> taus(cfg.tau_points);
    for (int i = 0; i < cfg.tau_points; ++i)
        taus[i] = cfg.tau_max * static_cast<double>(i) / (cfg.tau_points - 1);
    return taus;
}

void run_grow(const ExperimentConfig& cfg, Manifest& manifest) {
    const int L_max = cfg.layers > 0 ? cfg.layers : 250;
    GrowthCurve curve = run_growth(cfg.n, cfg.architecture, derive_seeds(cfg.master_seed, cfg.seeds),
                                   L_max, effective_kinds(cfg), cfg.p, cfg.workers);
    const std::string csv = cfg.out_dir + "/growth_curve.csv";
    write_growth_csv(curve, csv);
    manifest.output("growth_curve.csv");
    manifest.task("grow n=" + std::to_string(cfg.n), "complete");
    if (L_max >= 250) {
        json fits = json::array();
        for (EntropyKind kind : effective_kinds(cfg))
            fits.push_back(json::parse(growth_fit_json(fit_timescales(curve, kind))));
        write_text_file(cfg.out_dir + "/growth_fits.json", fits.dump(2) + "\n");
        manifest.output("growth_fits.json");
    }
}

void run_tables(const ExperimentConfig& cfg, Manifest& manifest) {
    if (cfg.n_list.empty()) throw ConfigError("tables experiment requires n_list");
    json rows = json::array();
    for (int n : cfg.n_list) {
        GrowthCurve curve = run_growth(n, cfg.architecture, derive_seeds(cfg.master_seed, cfg.seeds),
                                       250, all_entropy_kinds(), cfg.p, cfg.workers);
        const std::string csv_name = "growth_n" + std::to_string(n) + ".csv";
        write_growth_csv(curve, cfg.out_dir + "/" + csv_name);
        manifest.output(csv_name);
        for (EntropyKind kind : all_entropy_kinds()) {
            const GrowthFit fit = fit_timescales(curve, kind);
            rows.push_back({{"type", to_string(kind)},
                            {"n", n},
                            {"v_k", fit.velocity},
                            {"L_l", fit.L_linear},
                            {"r", fit.saturation},
                            {"L_s", fit.L_saturation}});
        }
        manifest.task("tables n=" + std::to_string(n), "complete");
    }
    write_text_file(cfg.out_dir + "/tables.json", json{{"rows", rows}}.dump(2) + "\n");
    manifest.output("tables.json");
}

void run_optimize(const ExperimentConfig& cfg, Manifest& manifest) {
    if (cfg.layers < 1) throw ConfigError("optimize experiment requires layers >= 1");
    const HamiltonianModel H = cfg.hamiltonian.build(cfg.n);
    std::optional<GroundSolution> ground;
    if (cfg.n <= 16) ground = ground_state(H);
    const auto seeds = derive_seeds(cfg.master_seed, cfg.seeds);
    std::vector<OptimizationTrace> traces(seeds.size());
    parallel_for(seeds.size(), cfg.workers, [&](std::size_t s) {
        CircuitSpec spec = CircuitSpec::random(cfg.n, cfg.layers, cfg.architecture, seeds[s], cfg.p);
        traces[s] = gradient_descent(spec, H, cfg.optimizer, ground ? &*ground : nullptr);
    });
    write_trace_csv(traces, cfg.out_dir + "/trace.csv");
    manifest.output("trace.csv");
    json summary = json::array();
    for (const auto& t : traces)
        summary.push_back({{"seed", t.seed},
                           {"final_energy", t.final_energy},
                           {"final_gap", t.records.back().gap},
                           {"steps", t.steps_taken},
                           {"energy_increase_steps", t.energy_increase_steps},
                           {"ground_diagnostics", t.ground_diagnostics}});
    json top{{"hamiltonian", to_string(H.kind())}, {"n", cfg.n}, {"L", cfg.layers},
             {"ground_energy", ground ? json(ground->energy) : json(nullptr)},
             {"seeds", summary}};
    write_text_file(cfg.out_dir + "/optimize_summary.json", top.dump(2) + "\n");
    manifest.output("optimize_summary.json");
    manifest.task("optimize", "complete");
}

void run_sweep(const ExperimentConfig& cfg, Manifest& manifest) {
    if (cfg.depths.empty()) throw ConfigError("sweep experiment requires depths");
    const HamiltonianModel H = cfg.hamiltonian.build(cfg.n);
    SweepResult sweep = success_sweep(cfg.n, H, cfg.depths, cfg.seeds, cfg.optimizer,
                                      cfg.architecture, cfg.p, cfg.success_threshold,
                                      cfg.master_seed, cfg.workers);
    write_text_file(cfg.out_dir + "/sweep_summary.json", sweep_json(sweep) + "\n");
    manifest.output("sweep_summary.json");
    CsvWriter csv(cfg.out_dir + "/sweep_table.csv",
                  {"L", "before_gap", "after_gap", "before_trace_dist", "after_trace_dist",
                   "before_renyi2", "after_renyi2", "success_rate"});
    for (const auto& c : sweep.cells)
        csv.row(c.L, c.before_gap_mean, c.after_gap_mean, c.before_dist_mean, c.after_dist_mean,
                c.before_renyi2_mean, c.after_renyi2_mean, c.success_rate);
    manifest.output("sweep_table.csv");
    manifest.task("sweep", "complete");
}

void run_diagnose(const ExperimentConfig& cfg, Manifest& manifest) {
    std::vector<int> depths = cfg.depths;
    if (depths.empty()) {
        if (cfg.layers < 1) throw ConfigError("diagnose requires depths or layers");
        depths = {cfg.layers};
    }
    const auto seeds = derive_seeds(cfg.master_seed, cfg.seeds);
    struct Row {
        uint64_t seed;
        int L;
        EntropyReport entropy;
        BoundsReport bounds;
    };
    std::vector<Row> rows(depths.size() * seeds.size());
    parallel_for(rows.size(), cfg.workers, [&](std::size_t task) {
        const int L = depths[task / seeds.size()];
        const uint64_t seed = seeds[task % seeds.size()];
        CircuitSpec spec = CircuitSpec::random(cfg.n, L, cfg.architecture, seed, cfg.p);
        const ReducedState rho = partial_trace(run_circuit(spec), cfg.n / 2);
        rows[task] = {seed, L, entropies(rho), theorem_bounds(rho)};
    });
    std::string out;
    for (const auto& row : rows) {
        json j{{"seed", row.seed},
               {"L", row.L},
               {"entropy", json::parse(to_json(row.entropy))},
               {"bounds", json::parse(to_json(row.bounds))}};
        out += j.dump();
        out += "\n";
    }
    write_text_file(cfg.out_dir + "/diagnostics.jsonl", out);
    manifest.output("diagnostics.jsonl");
    manifest.task("diagnose", "complete");
}

void run_sff(const ExperimentConfig& cfg, Manifest& manifest) {
    if (cfg.layers < 0) throw ConfigError("sff requires non-negative layers");
    const auto taus = tau_grid(cfg);
    const auto seeds = derive_seeds(cfg.master_seed, cfg.seeds);
    std::vector<std::vector<double>> per_seed(seeds.size());
    parallel_for(seeds.size(), cfg.workers, [&](std::size_t s) {
        CircuitSpec spec = CircuitSpec::random(cfg.n, cfg.layers, cfg.architecture, seeds[s], cfg.p);
        per_seed[s] = sff(partial_trace(run_circuit(spec), cfg.n / 2), taus).values;
    });
    SpectralFormFactor averaged;
    averaged.taus = taus;
    averaged.N = cfg.sff_n_convention == "qubits" ? static_cast<std::size_t>(cfg.n)
                                                  : (std::size_t{1} << (cfg.n / 2));
    averaged.values.assign(taus.size(), 0.0);
    for (const auto& v : per_seed)
        for (std::size_t i = 0; i < v.size(); ++i) averaged.values[i] += v[i];
    for (auto& v : averaged.values) v /= static_cast<double>(seeds.size());
    write_sff_csv(averaged, cfg.out_dir + "/sff.csv");
    manifest.output("sff.csv");
    manifest.task("sff", "complete");
}

void run_spread(const ExperimentConfig& cfg, Manifest& manifest) {
    std::vector<int> times = cfg.times;
    if (times.empty()) {
        const int t_max = cfg.layers > 0 ? cfg.layers : 10;
        for (int t = 0; t <= t_max; ++t) times.push_back(t);
    }
    const int needed = times.back();
    const int layers = std::max(cfg.layers, needed);
    CircuitSpec spec = CircuitSpec::random(cfg.n, layers, cfg.architecture,
                                           rng::member_seed(cfg.master_seed, 0), cfg.p);
    SpreadOperator op;
    std::optional<HamiltonianModel> H;
    auto parse_probe = [](const std::string& s) {
        return s == "x" ? ProbePauli::X : s == "y" ? ProbePauli::Y : ProbePauli::Z;
    };
    if (cfg.spread_operator == "hamiltonian") {
        H = cfg.hamiltonian.build(cfg.n);
        op.hamiltonian = &*H;
    } else {
        op.pauli = parse_probe(cfg.operator_pauli);
        op.site = cfg.operator_site;
    }
    SpreadProfile profile = spread_profile(op, spec, times, parse_probe(cfg.probe));
    write_spread_csv(profile, cfg.out_dir + "/spread.csv");
    write_coefficient_entropy_csv(profile, cfg.out_dir + "/coefficient_entropy.csv");
    manifest.output("spread.csv");
    manifest.output("coefficient_entropy.csv");
    manifest.task("spread", "complete");
}

}  // namespace

int run_experiment(ExperimentConfig cfg, bool force) {
    try {
        fs::create_directories(cfg.out_dir);
    } catch (const fs::filesystem_error& e) {
        throw ConfigError(std::string("cannot create output directory: ") + e.what());
    }
    const std::string hash = cfg.config_hash();
    const std::string manifest_path = cfg.out_dir + "/manifest.json";
    if (!force && fs::exists(manifest_path)) {
        try {
            json old = json::parse(read_text_file(manifest_path));
            if (old.value("config_hash", "") == hash && old.value("status", "") == "complete")
                return 0;  // identical config already complete; reuse
        } catch (...) {
            // unreadable manifest: fall through and rerun
        }
    }
    Manifest manifest = Manifest::start(cfg.out_dir, hash);
    write_text_file(cfg.out_dir + "/resolved_config.json", cfg.to_json_text() + "\n");
    try {
        switch (cfg.experiment) {
            case ExperimentKind::Grow: run_grow(cfg, manifest); break;
            case ExperimentKind::Tables: run_tables(cfg, manifest); break;
            case ExperimentKind::Optimize: run_optimize(cfg, manifest); break;
            case ExperimentKind::Sweep: run_sweep(cfg, manifest); break;
            case ExperimentKind::Diagnose: run_diagnose(cfg, manifest); break;
            case ExperimentKind::Sff: run_sff(cfg, manifest); break;
            case ExperimentKind::Spread: run_spread(cfg, manifest); break;
        }
    } catch (const ConfigError&) {
        manifest.finish("failed");
        throw;
    } catch (const std::exception& e) {
        manifest.task(std::string("error: ") + e.what(), "failed");
        manifest.finish("failed");
        return 3;
    }
    manifest.finish("complete");
    return 0;
}

int run_experiment(const std::string& config_path, const CliOverrides& overrides) {
    ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
    if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
    if (overrides.workers) cfg.workers = *overrides.workers;
    if (overrides.master_seed) cfg.master_seed = *overrides.master_seed;
    return run_experiment(std::move(cfg), overrides.force);
}

VerifyTolerances VerifyTolerances::from_file(const std::string& path) {
    json j = json::parse(read_text_file(path));
    VerifyTolerances tol;
    reject_unknown(j, {"v_k", "r", "L_l", "L_s", "energy"}, "tolerances");
    tol.v_k = j.value("v_k", tol.v_k);
    tol.r = j.value("r", tol.r);
    tol.L_l = j.value("L_l", tol.L_l);
    tol.L_s = j.value("L_s", tol.L_s);
    tol.energy = j.value("energy", tol.energy);
    return tol;
}

namespace {

json load_rows(const std::string& path) {
    fs::path p(path);
    if (fs::is_directory(p)) p /= "tables.json";
    json j = json::parse(read_text_file(p.string()));
    if (j.is_object() && j.contains("rows")) return j.at("rows");
    if (j.is_array()) return j;
    throw std::runtime_error("expected a rows array in " + p.string());
}

}  // namespace

std::string VerifyReport::to_json() const {
    json diffs_json = json::array();
    for (const auto& d : diffs)
        diffs_json.push_back({{"key", d.key},
                              {"expected", d.expected},
                              {"actual", d.missing ? json(nullptr) : json(d.actual)},
                              {"tolerance", d.tolerance},
                              {"missing", d.missing}});
    return json{{"pass", pass}, {"diffs", diffs_json}}.dump(2);
}

std::string VerifyReport::to_text() const {
    if (pass && diffs.empty()) return "verify: PASS (no diffs)\n";
    std::string out = pass ? "verify: PASS\n" : "verify: FAIL\n";
    for (const auto& d : diffs) {
        out += "  " + d.key + ": expected " + format_double(d.expected);
        if (d.missing)
            out += ", row missing";
        else
            out += ", got " + format_double(d.actual) + " (tol " + format_double(d.tolerance) + ")";
        out += "\n";
    }
    return out;
}

VerifyReport verify(const std::string& golden_path, const std::string& results_path,
                    const VerifyTolerances& tol) {
    const json golden = load_rows(golden_path);
    const json produced = load_rows(results_path);
    VerifyReport report;
    auto find_row = [&](const std::string& type, int n) -> const json* {
        for (const auto& row : produced)
            if (row.value("type", "") == type && row.value("n", -1) == n) return &row;
        return nullptr;
    };
    for (const auto& want : golden) {
        const std::string type = want.value("type", "");
        const int n = want.value("n", -1);
        const std::string prefix = type + "/n=" + std::to_string(n) + "/";
        const json* got = find_row(type, n);
        const struct {
            const char* key;
            double tolv;
        } fields[] = {{"v_k", tol.v_k}, {"r", tol.r}, {"L_l", tol.L_l}, {"L_s", tol.L_s},
                      {"energy", tol.energy}};
        for (const auto& f : fields) {
            if (!want.contains(f.key)) continue;
            const double expected = want.at(f.key).get<double>();
            if (!got || !got->contains(f.key)) {
                report.diffs.push_back({prefix + f.key, expected,
                                        std::numeric_limits<double>::quiet_NaN(), f.tolv, true});
                report.pass = false;
                continue;
            }
            const double actual = got->at(f.key).get<double>();
            if (std::abs(actual - expected) > f.tolv) {
                report.diffs.push_back({prefix + f.key, expected, actual, f.tolv, false});
                report.pass = false;
            }
        }
    }
    return report;
}

}  // namespace entdiag
