// glsim: run one experiment from an INI config and write CSV tables plus manifest.json.
#include "glsim/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int list_checks_cmd() {
    for (const auto& c : glsim::list_checks()) std::cout << c.id << "\t" << c.anchor << "\t" << c.summary << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glsim: Gibbs-state Lindbladian experiments"};
    std::string experiment, config_path, out_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<std::string> overrides;
    bool quiet = false;

    std::string names;
    for (const auto& e : glsim::experiment_names()) names += (names.empty() ? "" : ", ") + e;
    app.add_option("experiment", experiment, "one of: " + names + ", or list-checks")->required();
    auto* cfg_opt = app.add_option("--config,-c", config_path, "INI config file");
    auto* out_opt = app.add_option("--out,-o", out_dir, "output directory (default $GLSIM_OUT/<experiment> or results/<experiment>)");
    auto* seed_opt = app.add_option("--seed", seed, "overrides run.seed");
    app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--set", overrides, "override a key, section.key=value (repeatable)");
    app.add_flag("--quiet,-q", quiet, "only print failing checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (experiment == "list-checks") return list_checks_cmd();

    try {
        if (!*cfg_opt) throw glsim::ConfigError("--config is required");
        glsim::Config cfg = glsim::Config::load(config_path);
        if (*seed_opt) cfg.set("run.seed", std::to_string(seed));
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw glsim::ConfigError("--set expects section.key=value, got '" + o + "'");
            cfg.set(o.substr(0, eq), o.substr(eq + 1));
        }
        if (!*out_opt) {
            const std::string from_cfg = cfg.get_string("run.out", "");
            if (!from_cfg.empty()) {
                out_dir = cfg.resolve_path(from_cfg);
            } else {
                const char* root = std::getenv("GLSIM_OUT");
                out_dir = (std::filesystem::path(root && *root ? root : "results") / experiment).string();
            }
        }

        const std::string started = utc_now();
        const glsim::RunResult r = glsim::run_experiment(experiment, cfg, jobs);
        const std::string finished = utc_now();
        glsim::write_outputs(r, cfg, out_dir, started, finished);

        int failed = 0;
        for (const auto& c : r.checks) {
            if (!c.pass) ++failed;
            if (quiet && c.pass) continue;
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << " [" << c.detail << "] measured=" << c.measured << " "
                      << c.relation << " " << c.bound;
            if (c.tolerance > 0) std::cout << " (tol " << c.tolerance << ")";
            std::cout << "\n";
        }
        for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
        std::cout << r.checks.size() - failed << "/" << r.checks.size() << " checks passed; output in " << out_dir << "\n";
        return failed ? 1 : 0;
    } catch (const glsim::InvalidArgument& e) {
        std::cerr << "glsim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "glsim: error: " << e.what() << "\n";
        return 2;
    }
}
