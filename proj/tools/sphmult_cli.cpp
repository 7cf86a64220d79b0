// Command-line experiment runner. Exit codes: 0 pass, 1 assertion failure,
// 2 usage/config error -- never anything else.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphmult/experiment.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::string check;
    // flag overrides, applied after the config file
    std::int64_t seed = -1;
    std::string family;
    int m = 0;
    int l = 0;
    int kmax = 0;
    std::string format;
};

nlohmann::json resolve_config(const Options& opt) {
    nlohmann::json cfg = sphmult::default_config();
    if (!opt.config_path.empty())
        cfg = sphmult::merge_config(cfg, sphmult::load_config_file(opt.config_path));
    if (opt.seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(opt.seed);
    if (!opt.family.empty()) cfg["family"]["name"] = opt.family;
    if (opt.m > 0) {
        cfg["family"]["m"] = opt.m;
        cfg["kernel"]["m"] = opt.m;
    }
    if (opt.l > 0) cfg["family"]["l"] = opt.l;
    if (opt.kmax > 0) {
        cfg["kernel"]["k_max"] = opt.kmax;
        cfg["corpus"]["k_max"] = opt.kmax;
    }
    if (!opt.format.empty()) {
        if (opt.format != "csv" && opt.format != "json")
            throw sphmult::ConfigError("--format must be csv or json");
        cfg["output"]["format"] = opt.format;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplier-operator experiments on the sphere"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "config file (.json or .toml)");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--seed", opt.seed, "random seed override");
    app.add_option("--family", opt.family, "family name override");
    app.add_option("--m", opt.m, "sphere dimension override");
    app.add_option("--l", opt.l, "combination order override");
    app.add_option("--kmax", opt.kmax, "kernel/corpus band limit override");
    app.add_option("--format", opt.format, "csv|json");

    auto* multipliers = app.add_subcommand("multipliers", "dump eta_k^t over the lattice");
    auto* verify = app.add_subcommand("verify", "run one verifier");
    verify->add_option("check", opt.check, "verifier name")->required();
    auto* fit = app.add_subcommand("fit-holder", "Hoelder-exponent log-log fit");
    auto* eigen = app.add_subcommand("eigen", "dump the decreasing eigenvalue rearrangement");
    auto* print = app.add_subcommand("print-config", "print the resolved config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const nlohmann::json cfg = resolve_config(opt);
        if (print->parsed()) {
            std::cout << cfg.dump(2) << "\n";
            return 0;
        }
        std::filesystem::create_directories(opt.out_dir);
        if (multipliers->parsed()) return sphmult::cmd_multipliers(cfg, opt.out_dir);
        if (verify->parsed()) return sphmult::cmd_verify(opt.check, cfg, opt.out_dir);
        if (fit->parsed()) return sphmult::cmd_fit_holder(cfg, opt.out_dir);
        if (eigen->parsed()) return sphmult::cmd_eigen(cfg, opt.out_dir);
        return 2;
    } catch (const sphmult::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
