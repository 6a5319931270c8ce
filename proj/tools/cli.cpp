#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gme/error.hpp"
#include "gme/hierarchy.hpp"
#include "gme/search.hpp"
#include "gme/state_io.hpp"

#ifndef GME_DATA_DIR
#define GME_DATA_DIR "data"
#endif

namespace gme::cli {

using nlohmann::json;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::string dims_label(const std::vector<std::size_t>& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(dims[i]);
    }
    return out;
}

json optimizer_json(const OptimizerConfig& cfg) {
    return {{"restarts", cfg.restarts},
            {"max_iterations", cfg.max_iterations},
            {"tolerance", cfg.tolerance},
            {"seed", cfg.seed},
            {"threads", cfg.threads}};
}

json RunReport::to_json() const {
    return {{"command", command},     {"args", args},         {"input_digest", input_digest},
            {"config", config},       {"results", results},   {"diagnostics", diagnostics},
            {"wall_time_s", wall_time_s}};
}

namespace {

struct StateSource {
    std::string file;
    std::string family;
    std::vector<std::string> params;
    bool no_normalize = false;
    std::size_t max_entries = default_max_entries;
};

std::pair<std::string, double> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::MalformedInput, "expected name=value, got '" + text + "'");
    }
    const std::string name = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw Error(ErrorCode::MalformedInput, "parameter " + name + " has non-numeric value '" + value + "'");
    }
    return {name, v};
}

StateFamily family_from(const std::string& name, const std::vector<std::string>& params) {
    StateFamily f = StateFamily::parse(name);
    for (const auto& p : params) {
        const auto [key, value] = parse_assignment(p);
        f.params[key] = value;
    }
    return f;
}

struct LoadedState {
    ComplexTensor tensor;
    json description;
};

LoadedState load_state(const StateSource& src) {
    const bool has_file = !src.file.empty();
    const bool has_family = !src.family.empty();
    if (has_file == has_family) {
        throw Error(ErrorCode::MalformedInput, "give exactly one state source: --file or --family");
    }
    if (has_file) {
        if (!src.params.empty()) throw Error(ErrorCode::MalformedInput, "--param applies to --family only");
        auto t = load_state_file(src.file, !src.no_normalize);
        return {std::move(t), json{{"file", src.file}, {"normalized", !src.no_normalize}}};
    }
    const StateFamily f = family_from(src.family, src.params);
    auto t = family_state(f, src.max_entries);
    return {std::move(t), json{{"family", f.name()}, {"params", f.params}}};
}

std::string hex_digest(const ComplexTensor& t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(tensor_digest(t)));
    return buf;
}

void add_state_options(CLI::App* sub, StateSource& src) {
    sub->add_option("--file", src.file, "JSON state file");
    sub->add_option("--family", src.family,
                    "Named family: dicke, wsup, qudit, weighted-w3, weighted-w4, w5, hs, l, bssb4-family, "
                    "bssb4, bssb5, phi, ghz");
    sub->add_option("--param", src.params, "Family parameter as name=value (repeatable)");
    sub->add_flag("--no-normalize", src.no_normalize, "Use file amplitudes as given");
    sub->add_option("--memory-cap", src.max_entries, "Largest dense state (amplitudes) a constructor may build");
}

void add_optimizer_options(CLI::App* sub, OptimizerConfig& cfg) {
    sub->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
    sub->add_option("--max-iter", cfg.max_iterations, "Sweeps per restart")->capture_default_str();
    sub->add_option("--tol", cfg.tolerance, "Convergence threshold on |lambda| change")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

json factors_json(const RankOneState& state) {
    json factors = json::array();
    for (const auto& f : state.factors) {
        json v = json::array();
        for (const auto& z : f) v.push_back({z.real(), z.imag()});
        factors.push_back(std::move(v));
    }
    return factors;
}

std::string complex_text(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
    return buf;
}

// ---------------------------------------------------------------------------

int cmd_gme(const StateSource& src, const OptimizerConfig& cfg, const std::string& output, std::ostream& out,
            RunReport& report) {
    const auto state = load_state(src);
    report.input_digest = hex_digest(state.tensor);
    report.config = {{"state", state.description}, {"optimizer", optimizer_json(cfg)}, {"output", output}};

    const GmeResult r = best_rank_one(state.tensor, cfg);
    report.results = {{"dims", state.tensor.dims()},
                      {"lambda", r.overlap},
                      {"E", r.entanglement},
                      {"factors", factors_json(r.best_state)}};
    report.diagnostics = {{"best_restart", r.best_restart},
                          {"restart_overlaps", r.restart_overlaps},
                          {"iterations_used", r.iterations_used},
                          {"hit_max_iterations", r.hit_max_iterations}};

    if (output == "csv") {
        out << "lambda,E\n" << fixed6(r.overlap) << ',' << fixed6(r.entanglement) << '\n';
    } else if (output == "text") {
        std::size_t hits = 0;
        for (bool h : r.hit_max_iterations) hits += h ? 1 : 0;
        out << "dims: " << dims_label(state.tensor.dims()) << '\n';
        out << "lambda: " << fixed6(r.overlap) << '\n';
        out << "E: " << fixed6(r.entanglement) << '\n';
        out << "restarts: " << cfg.restarts << " (" << hits << " hit max-iter)\n";
        for (std::size_t l = 0; l < r.best_state.factors.size(); ++l) {
            out << "factor " << l + 1 << ':';
            for (const auto& z : r.best_state.factors[l]) out << ' ' << complex_text(z);
            out << '\n';
        }
    }
    return exit_ok;
}

int cmd_hierarchy(const StateSource& src, const OptimizerConfig& cfg, bool by_signature, const std::string& output,
                  std::ostream& out, RunReport& report) {
    const auto state = load_state(src);
    report.input_digest = hex_digest(state.tensor);
    report.config = {{"state", state.description},
                     {"optimizer", optimizer_json(cfg)},
                     {"by_signature", by_signature},
                     {"output", output}};

    const auto h = hierarchy_report(state.tensor, cfg, by_signature, report.input_digest);
    json rows = json::array();
    if (output == "csv") out << "partition,dims,lambda,E\n";
    for (const auto& row : h.rows) {
        const std::string label = by_signature ? signature_label(row.signature) : row.partition.label();
        rows.push_back({{"partition", label},
                        {"representative", row.partition.label()},
                        {"dims", dims_label(row.merged_dims)},
                        {"lambda", row.overlap},
                        {"E", row.entanglement}});
        if (output == "csv") {
            out << csv_field(label) << ',' << dims_label(row.merged_dims) << ',' << fixed6(row.overlap) << ','
                << fixed6(row.entanglement) << '\n';
        }
    }
    report.results = {{"rows", rows}};
    return exit_ok;
}

std::vector<double> parse_grid(const std::string& spec, std::string& name) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::MalformedInput, "--param-grid expects name=start:stop:count");
    }
    name = spec.substr(0, eq);
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw Error(ErrorCode::MalformedInput, "--param-grid expects name=start:stop:count");
    try {
        std::size_t used = 0;
        const double first = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        const double last = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("stop");
        const long long count = std::stoll(parts[2], &used);
        if (used != parts[2].size() || count < 1) throw std::invalid_argument("count");
        return linspace(first, last, static_cast<std::size_t>(count));
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::MalformedInput, "cannot parse grid '" + spec + "'");
    }
}

int cmd_sweep(const StateSource& src, const std::string& grid_spec, const OptimizerConfig& cfg,
              const std::string& output, std::ostream& out, RunReport& report) {
    if (src.family.empty() || !src.file.empty()) {
        throw Error(ErrorCode::MalformedInput, "sweep needs --family (and no --file)");
    }
    SweepSpec spec;
    spec.family = family_from(src.family, src.params);
    spec.grid = parse_grid(grid_spec, spec.parameter);
    report.config = {{"family", spec.family.name()},
                     {"params", spec.family.params},
                     {"parameter", spec.parameter},
                     {"grid", grid_spec},
                     {"optimizer", optimizer_json(cfg)},
                     {"output", output}};

    const auto rows = sweep(spec, cfg);
    json jrows = json::array();
    if (output == "csv") out << "param,lambda,E\n";
    for (const auto& row : rows) {
        jrows.push_back({{"param", row.value}, {"lambda", row.overlap}, {"E", row.entanglement}});
        if (output == "csv") {
            out << fixed6(row.value) << ',' << fixed6(row.overlap) << ',' << fixed6(row.entanglement) << '\n';
        }
    }
    report.results = {{"rows", jrows}};
    return exit_ok;
}

int cmd_search(SearchConfig cfg, bool exhaustive, std::size_t cap, std::ostream& out, RunReport& report) {
    report.config = {{"qubits", cfg.n_qubits},
                     {"ones", cfg.ones_count},
                     {"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"keep_top", cfg.keep_top},
                     {"confirm_restarts", cfg.confirm_restarts},
                     {"exhaustive", exhaustive},
                     {"cap", cap},
                     {"optimizer", optimizer_json(cfg.optimizer)}};
    std::vector<SearchHit> hits;
    if (exhaustive) {
        hits = exhaustive_search(cfg.n_qubits, cfg.ones_count, cfg.optimizer, cap, cfg.threads);
        if (hits.size() > cfg.keep_top) hits.resize(cfg.keep_top);
    } else {
        hits = mc_search(cfg);
    }
    json rows = json::array();
    for (const auto& h : hits) {
        const json line = {{"support", h.support}, {"lambda", h.overlap}, {"E", h.entanglement}};
        out << line.dump() << '\n';
        rows.push_back(line);
    }
    report.results = {{"hits", rows}};
    return exit_ok;
}

int cmd_dump(const StateSource& src, const std::string& path, std::ostream& out, RunReport& report) {
    const auto state = load_state(src);
    report.input_digest = hex_digest(state.tensor);
    report.config = {{"state", state.description}, {"out", path}};
    if (path.empty() || path == "-") {
        out << state_to_json(state.tensor) << '\n';
    } else {
        save_state_file(path, state.tensor);
    }
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geometric measure of entanglement of pure multipartite states", "gme-cli"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string report_path;
    app.add_option("--report", report_path, "Write a JSON run report to this path");

    StateSource src;
    OptimizerConfig cfg;
    std::string output = "text";

    auto* gme_cmd = app.add_subcommand("gme", "Overlap and entanglement of one state");
    add_state_options(gme_cmd, src);
    add_optimizer_options(gme_cmd, cfg);
    gme_cmd->add_option("--output", output, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();

    bool by_signature = false;
    std::string table_output = "csv";
    auto* hier_cmd = app.add_subcommand("hierarchy", "Entanglement for every partition of the parties");
    add_state_options(hier_cmd, src);
    add_optimizer_options(hier_cmd, cfg);
    hier_cmd->add_flag("--by-signature", by_signature, "One row per block-size signature (max overlap)");
    hier_cmd->add_option("--output", table_output, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::string grid;
    auto* sweep_cmd = app.add_subcommand("sweep", "Entanglement along a family parameter");
    add_state_options(sweep_cmd, src);
    add_optimizer_options(sweep_cmd, cfg);
    sweep_cmd->add_option("--param-grid", grid, "name=start:stop:count")->required();
    sweep_cmd->add_option("--output", table_output, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    SearchConfig search_cfg;
    bool exhaustive = false;
    std::size_t cap = 1'000'000;
    auto* search_cmd = app.add_subcommand("search", "Monte Carlo search over equal-amplitude supports");
    search_cmd->add_option("--qubits", search_cfg.n_qubits)->required();
    search_cmd->add_option("--ones", search_cfg.ones_count)->required();
    search_cmd->add_option("--samples", search_cfg.samples)->capture_default_str();
    search_cmd->add_option("--seed", search_cfg.seed)->capture_default_str();
    search_cmd->add_option("--keep-top", search_cfg.keep_top)->capture_default_str();
    search_cmd->add_option("--restarts", search_cfg.optimizer.restarts, "Restarts per sample")->capture_default_str();
    search_cmd->add_option("--confirm-restarts", search_cfg.confirm_restarts)->capture_default_str();
    search_cmd->add_option("--max-iter", search_cfg.optimizer.max_iterations)->capture_default_str();
    search_cmd->add_option("--tol", search_cfg.optimizer.tolerance)->capture_default_str();
    search_cmd->add_option("--threads", search_cfg.threads)->capture_default_str();
    search_cmd->add_flag("--exhaustive", exhaustive, "Evaluate every support instead of sampling");
    search_cmd->add_option("--cap", cap, "Largest support count --exhaustive may enumerate")->capture_default_str();

    BenchOptions bench;
    bench.reference = std::filesystem::path(GME_DATA_DIR) / "bench_reference.json";
    std::string selector;
    std::string reference = bench.reference.string();
    auto* bench_cmd = app.add_subcommand("bench", "Regenerate a reference table or figure and check it");
    bench_cmd->add_option("selector", selector, "table1..3, fig1..4 or states")
        ->required()
        ->check(CLI::IsMember(bench_selectors));
    bench_cmd->add_option("--reference", reference, "Reference values file")->capture_default_str();
    bench_cmd->add_flag("--include-large", bench.include_large, "Also run the large qudit rows");
    bench_cmd->add_option("--memory-cap", bench.max_entries, "Largest dense state (amplitudes)");
    add_optimizer_options(bench_cmd, cfg);

    std::string dump_path;
    auto* dump_cmd = app.add_subcommand("dump", "Write a state in the JSON state file format");
    add_state_options(dump_cmd, src);
    dump_cmd->add_option("--out", dump_path, "Output path (default: stdout)");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_bad_input;
    }

    RunReport report;
    report.args = args;
    const auto start = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        if (gme_cmd->parsed()) {
            report.command = "gme";
            std::ostringstream sink;
            code = cmd_gme(src, cfg, output, output == "json" ? static_cast<std::ostream&>(sink) : out, report);
        } else if (hier_cmd->parsed()) {
            report.command = "hierarchy";
            code = cmd_hierarchy(src, cfg, by_signature, table_output, out, report);
        } else if (sweep_cmd->parsed()) {
            report.command = "sweep";
            code = cmd_sweep(src, grid, cfg, table_output, out, report);
        } else if (search_cmd->parsed()) {
            report.command = "search";
            search_cfg.optimizer.seed = search_cfg.seed;
            code = cmd_search(search_cfg, exhaustive, cap, out, report);
        } else if (bench_cmd->parsed()) {
            report.command = "bench";
            bench.reference = reference;
            bench.optimizer = cfg;
            code = run_bench(selector, bench, out, report) ? exit_ok : exit_check_failed;
        } else if (dump_cmd->parsed()) {
            report.command = "dump";
            code = cmd_dump(src, dump_path, out, report);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::ZeroTensor ? exit_zero_tensor : exit_bad_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    }
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool json_output = (gme_cmd->parsed() && output == "json") ||
                             ((hier_cmd->parsed() || sweep_cmd->parsed()) && table_output == "json");
    if (json_output) out << report.to_json().dump(2) << '\n';
    if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) {
            err << "error: cannot write report " << report_path << '\n';
            return exit_bad_input;
        }
        file << report.to_json().dump(2) << '\n';
    }
    return code;
}

} // namespace gme::cli
