// Command-line front end: far-field planning, synthetic campaigns, the
// three-antenna gain solve, deviation statistics, and the 1/d cross-check.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffgain/config.hpp"
#include "ffgain/errors.hpp"
#include "ffgain/io.hpp"
#include "ffgain/linksim.hpp"
#include "ffgain/pipeline.hpp"

namespace {

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format = "table";
    std::string frequency;  // quantity text, e.g. "170 GHz"
    std::int64_t seed = -1;
    std::string campaign_path;  // positional override of files.campaign
    std::string sweep_path;     // positional override of files.sweep
    bool sweep_geometry = false;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("-c,--config", opt.config_path, "JSON config file (defaults built in)");
    cmd->add_option("-s,--set", opt.overrides,
                    "dotted-path override, e.g. sim.seed=7 (repeatable)");
    cmd->add_option("-o,--out", opt.out_path,
                    "write machine CSV here (aligned table still goes to stdout)");
    cmd->add_option("--format", opt.format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--seed", opt.seed, "shorthand for --set sim.seed=N");
}

ffgain::config::Config make_config(Options& opt) {
    if (opt.seed >= 0) {
        opt.overrides.push_back("sim.seed=" + std::to_string(opt.seed));
    }
    if (!opt.frequency.empty()) {
        opt.overrides.push_back("report.frequency=" + opt.frequency);
    }
    auto cfg = ffgain::config::load(opt.config_path, opt.overrides);
    if (!opt.campaign_path.empty()) cfg.campaign_file = opt.campaign_path;
    if (!opt.sweep_path.empty()) cfg.sweep_file = opt.sweep_path;
    return cfg;
}

void deliver(const ffgain::io::Table& table, const Options& opt) {
    if (!opt.out_path.empty()) {
        ffgain::io::write_file(opt.out_path, table.to_csv());
        std::cout << table.to_aligned();
    } else if (opt.format == "csv") {
        std::cout << table.to_csv();
    } else {
        std::cout << table.to_aligned();
    }
}

void deliver_text(const std::string& text, const Options& opt) {
    if (!opt.out_path.empty()) {
        ffgain::io::write_file(opt.out_path, text);
    } else {
        std::cout << text;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Compact-cluster three-antenna gain toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* ffdist = app.add_subcommand(
        "ffdist", "Far-field distance criteria for every aperture pairing");
    add_common(ffdist, opt);
    ffdist->add_option("-f,--frequency", opt.frequency,
                       "evaluation frequency, e.g. '170 GHz'");

    auto* plan = app.add_subcommand(
        "plan", "Cluster schedule with phase budget and criterion verdicts");
    add_common(plan, opt);
    plan->add_option("-f,--frequency", opt.frequency,
                     "evaluation frequency, e.g. '170 GHz'");

    auto* simulate = app.add_subcommand(
        "simulate", "Synthesize a measurement campaign from the coupling model");
    add_common(simulate, opt);
    simulate->add_flag("--sweep", opt.sweep_geometry,
                       "use the distance-sweep geometry instead of the clusters");

    auto* solve = app.add_subcommand(
        "solve", "Per-cluster three-antenna gains");
    add_common(solve, opt);
    solve->add_option("campaign", opt.campaign_path, "campaign file (else files.campaign)");

    auto* stats = app.add_subcommand(
        "stats", "Per-cluster gains with per-frequency repetition deviation");
    add_common(stats, opt);
    stats->add_option("campaign", opt.campaign_path, "campaign file (else files.campaign)");

    auto* extrapolate = app.add_subcommand(
        "extrapolate", "1/d fit of the distance sweep and its asymptotic gains");
    add_common(extrapolate, opt);
    extrapolate->add_option("sweep", opt.sweep_path, "sweep file (else files.sweep)");

    auto* compare = app.add_subcommand(
        "compare", "Cluster solve vs extrapolated asymptote, per antenna");
    add_common(compare, opt);
    compare->add_option("campaign", opt.campaign_path, "campaign file (else files.campaign)");
    compare->add_option("sweep", opt.sweep_path, "sweep file (else files.sweep)");

    CLI11_PARSE(app, argc, argv);

    using namespace ffgain;
    const auto cfg = make_config(opt);

    if (ffdist->parsed()) {
        deliver(pipeline::ffdist_table(cfg, cfg.report_frequency_hz), opt);
    } else if (plan->parsed()) {
        deliver(pipeline::plan_table(cfg, cfg.report_frequency_hz), opt);
    } else if (simulate->parsed()) {
        const auto clusters = opt.sweep_geometry ? cfg.sweep_segments() : cfg.pair_clusters();
        const Campaign campaign = linksim::synthesize_campaign(
            cfg.antennas, clusters, cfg.grid, cfg.model, cfg.runs);
        deliver_text(io::emit_campaign(campaign), opt);
    } else if (solve->parsed()) {
        const Campaign campaign = pipeline::load_or_synthesize_campaign(cfg);
        deliver(pipeline::solve_table(pipeline::solve_clusters(campaign, cfg)), opt);
    } else if (stats->parsed()) {
        const Campaign campaign = pipeline::load_or_synthesize_campaign(cfg);
        deliver(pipeline::stats_table(pipeline::solve_clusters(campaign, cfg)), opt);
    } else if (extrapolate->parsed()) {
        const Campaign sweep = pipeline::load_or_synthesize_sweep(cfg);
        const auto result = pipeline::extrapolate_sweep(sweep, cfg);
        io::Table gains;
        gains.add_column("antenna");
        gains.add_column("frequency_hz");
        gains.add_column("gain_db", 2);
        for (const auto& a : result.solution.antennas) {
            for (std::size_t f = 0; f < result.solution.grid.count; ++f) {
                gains.begin_row();
                gains.cell_text(a.id);
                gains.cell(result.solution.grid.at(f));
                gains.cell(a.gain_db[f]);
            }
        }
        deliver(gains, opt);
        // Fit quality always lands on stdout, next to whichever table form.
        std::cout << "\n" << result.diagnostics.to_aligned();
    } else if (compare->parsed()) {
        const Campaign campaign = pipeline::load_or_synthesize_campaign(cfg);
        const auto per_cluster = pipeline::solve_clusters(campaign, cfg);
        const Campaign sweep = pipeline::load_or_synthesize_sweep(cfg);
        const auto extrapolated = pipeline::extrapolate_sweep(sweep, cfg);
        deliver(pipeline::compare_table(per_cluster.at(cfg.ccm_cluster - 1),
                                        extrapolated.solution),
                opt);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ffgain::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const ffgain::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ffgain::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
