#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "oocsim/engine.hpp"
#include "oocsim/experiments.hpp"
#include "oocsim/metrics.hpp"
#include "oocsim/scenario.hpp"
#include "oocsim/simulation.hpp"

using namespace oocsim;

namespace {

ScenarioConfig load(const std::string& path, const std::vector<std::string>& sets)
{
    ScenarioConfig c = load_config_file(path);
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError(kv, "expected key=value");
        apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return c;
}

int print_claims(const std::vector<Claim>& claims)
{
    for (const Claim& c : claims)
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.detail << "]\n";
    return all_passed(claims) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"oocsim: out-of-order caching scheme simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string scheme;
    std::uint64_t seed = 0;
    std::string out;
    std::string trace;

    auto* run = app.add_subcommand("run", "Run one scenario and write its metrics");
    run->add_option("--config", config_path, "key=value config file")->required()->check(CLI::ExistingFile);
    run->add_option("--scheme", scheme, "ooc1..ooc4");
    auto* seed_opt = run->add_option("--seed", seed, "RNG seed");
    run->add_option("--out", out, "metrics CSV path");
    run->add_option("--trace", trace, "trace CSV path");
    run->add_option("--set", sets, "extra key=value overrides");

    std::string cmp_config;
    std::string cmp_out;
    std::vector<std::string> cmp_sets;
    auto* compare = app.add_subcommand("compare", "Run ooc1..ooc4 on one config");
    compare->add_option("--config", cmp_config, "key=value config file")->required()->check(CLI::ExistingFile);
    compare->add_option("--out", cmp_out, "comparison CSV path")->required();
    compare->add_option("--set", cmp_sets, "extra key=value overrides");

    std::string which;
    std::size_t seeds = 20;
    auto* paper = app.add_subcommand("paper", "Run a canned reproduction and check its claims");
    paper->add_option("experiment", which)
        ->required()
        ->check(CLI::IsMember({"figure1", "forced-timeouts", "congestion", "light-load"}));
    paper->add_option("--seeds", seeds, "seed count for congestion")->check(CLI::Range(1, 10000));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ScenarioConfig c = load(config_path, sets);
            if (!scheme.empty())
                apply_setting(c, "scheme", scheme);
            if (*seed_opt)
                c.seed = seed;
            if (!out.empty())
                c.metrics_out = out;
            if (!trace.empty())
                c.trace_out = trace;
            const Metrics m = run_scenario(c);
            if (c.metrics_out.empty())
                write_metrics_csv(std::cout, {m});
            return 0;
        }
        if (*compare) {
            const ScenarioConfig c = load(cmp_config, cmp_sets);
            const std::vector<Metrics> rows = compare_schemes(c, cmp_out);
            for (const Metrics& m : rows)
                std::cout << m.scheme << " goodput " << m.goodput << " pps, transmissions "
                          << m.data_transmissions_total << "\n";
            return 0;
        }
        if (which == "figure1")
            return print_claims(figure1_claims());
        if (which == "forced-timeouts")
            return print_claims(forced_timeout_claims());
        if (which == "congestion")
            return print_claims(congestion_claims(seeds));
        return print_claims(light_load_claims());
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
