#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gme/optimizer.hpp"
#include "gme/states.hpp"

namespace gme::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_bad_input = 2;
inline constexpr int exit_zero_tensor = 3;

/// Everything needed to reproduce a run: the command line, a digest of the
/// input state, the resolved configuration, results and diagnostics.
struct RunReport {
    std::string command;
    std::vector<std::string> args;
    std::string input_digest;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::object();
    double wall_time_s = 0.0;

    nlohmann::json to_json() const;
};

struct BenchOptions {
    std::filesystem::path reference;
    OptimizerConfig optimizer;
    bool include_large = false;
    std::size_t max_entries = default_max_entries;
};

inline const std::vector<std::string> bench_selectors = {"table1", "table2", "table3", "fig1",
                                                         "fig2",   "fig3",   "fig4",   "states"};

/// Writes the selected table or figure as CSV with a trailing pass column.
/// Returns true when every checked row passes.
bool run_bench(std::string_view selector, const BenchOptions& options, std::ostream& out, RunReport& report);

/// Runs the command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// CSV helpers shared by the commands.
std::string fixed6(double v);
std::string csv_field(const std::string& s);
std::string dims_label(const std::vector<std::size_t>& dims);
nlohmann::json optimizer_json(const OptimizerConfig& cfg);

} // namespace gme::cli
