#pragma once

#include "glsim/config.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace glsim {

inline constexpr const char* kArtifactVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;  // "name[unit]" where a unit applies
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::string to_csv() const;  // doubles with 17 significant digits
};

struct CheckResult {
    std::string id;
    std::string detail;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    std::string relation;  // "<=", ">=", "=="
    bool pass = false;
};

struct RunResult {
    std::string experiment;
    std::vector<Table> tables;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool all_pass() const;
};

struct CheckInfo {
    std::string id;
    std::string anchor;
    std::string summary;
};

// Catalog of the acceptance checks in a stable order.
const std::vector<CheckInfo>& list_checks();

const std::vector<std::string>& experiment_names();

// Dispatches on `experiment` (the CLI positional argument) using the keys of `cfg`.
RunResult run_experiment(const std::string& experiment, const Config& cfg, int jobs = 1);

// Writes <out>/<table>.csv and <out>/manifest.json; returns the written paths.
std::vector<std::string> write_outputs(const RunResult& r, const Config& cfg, const std::string& out_dir,
                                       const std::string& started, const std::string& finished);

// Runs f(0..count-1) on up to `jobs` threads; results are stored by index.
void parallel_for(int count, int jobs, const std::function<void(int)>& f);

}  // namespace glsim
