#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmstab/experiment.hpp"

namespace fs = std::filesystem;
using namespace fmstab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotCertifiable = 2;
constexpr int kExitBlowUp = 3;

ExperimentConfig load(const std::string& path, const std::string& out_dir, long long seed) {
    ExperimentConfig cfg = load_config_file(path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    return cfg;
}

int run_certify(const std::string& config_path, const std::string& out_dir, long long seed) {
    const ExperimentConfig cfg = load(config_path, out_dir, seed);
    const ThresholdReport rep = certify(cfg);
    fs::create_directories(cfg.output_dir);
    write_text((fs::path(cfg.output_dir) / "certificate.json").string(), rep.to_json() + "\n");
    std::cout << (rep.certified ? "certified" : "not certifiable") << ": mu_min=" << rep.mu_min
              << " N_min=" << rep.n_min << "\n";
    return rep.certified ? kExitOk : kExitNotCertifiable;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, long long seed) {
    const ExperimentConfig cfg = load(config_path, out_dir, seed);
    const SimulationOutput sim = simulate(cfg);
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    write_run_csv((dir / "run.csv").string(), sim.record);
    write_meta_json((dir / "run.meta.json").string(), cfg, sim.record);
    if (sim.record.aborted) {
        nlohmann::json j;
        j["abort_step"] = sim.record.abort_step;
        j["dt_used"] = sim.record.meta.dt_used;
        j["last_finite_state"] = sim.record.last_finite_state;
        write_text((dir / "diagnostic.json").string(), j.dump(2) + "\n");
        std::cerr << "numerical blow-up at step " << sim.record.abort_step
                  << "; last finite state written to diagnostic.json\n";
        return kExitBlowUp;
    }
    std::cout << "wrote " << (dir / "run.csv").string() << " (" << sim.record.rows.size()
              << " rows)\n";
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, long long seed,
              const std::string& axis, const std::string& values_csv) {
    const ExperimentConfig base = load(config_path, out_dir, seed);
    std::vector<double> values;
    {
        std::stringstream ss(values_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) values.push_back(std::stod(tok));
    }
    fs::create_directories(base.output_dir);

    struct Row {
        double value;
        std::string status = "ok";
        double fitted_rate = 0.0;
        double r_squared = 0.0;
        std::string verdict = "NOT_APPLICABLE";
    };
    auto run_one = [&](double value) -> Row {
        Row row;
        row.value = value;
        try {
            nlohmann::json j = nlohmann::json::parse(base.canonical);
            nlohmann::json* node = &j;
            std::string path = axis;
            for (std::size_t pos = path.find('.'); pos != std::string::npos;
                 pos = path.find('.')) {
                node = &(*node)[path.substr(0, pos)];
                path = path.substr(pos + 1);
            }
            if (!node->contains(path) || !(*node)[path].is_number())
                throw ConfigError("sweep axis does not name a numeric config field: " + axis);
            (*node)[path] = value;
            ExperimentConfig cfg = parse_config(j.dump());
            cfg.output_dir = base.output_dir;
            cfg.seed = base.seed;
            std::ostringstream sub;
            sub << axis << "=" << value;
            cfg.output_dir = (fs::path(base.output_dir) / sub.str()).string();
            fs::create_directories(cfg.output_dir);

            const ThresholdReport rep = certify(cfg);
            write_text((fs::path(cfg.output_dir) / "certificate.json").string(),
                       rep.to_json() + "\n");
            const SimulationOutput sim = simulate(cfg);
            write_run_csv((fs::path(cfg.output_dir) / "run.csv").string(), sim.record);
            write_meta_json((fs::path(cfg.output_dir) / "run.meta.json").string(), cfg, sim.record);
            if (sim.record.aborted) {
                row.status = "blow_up";
                return row;
            }
            const AnalysisOutput an = analyze(cfg, sim.record, rep);
            write_text((fs::path(cfg.output_dir) / "verdict.json").string(),
                       verdict_json(an, rep));
            row.fitted_rate = an.fit.fitted_rate;
            row.r_squared = an.fit.r_squared;
            row.verdict = verdict_name(an.verdict);
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        return row;
    };

    std::vector<std::future<Row>> futures;
    futures.reserve(values.size());
    for (double v : values)
        futures.push_back(std::async(std::launch::async, run_one, v));
    std::string csv = "value,status,fitted_rate,r_squared,verdict\n";
    char buf[256];
    for (auto& f : futures) {
        const Row r = f.get();
        std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%s\n", r.value, r.status.c_str(),
                      r.fitted_rate, r.r_squared, r.verdict.c_str());
        csv += buf;
    }
    write_text((fs::path(base.output_dir) / "sweep.csv").string(), csv);
    std::cout << "wrote " << (fs::path(base.output_dir) / "sweep.csv").string() << " ("
              << values.size() << " rows)\n";
    return kExitOk;
}

int run_check_order(const std::string& config_path, const std::string& dt_csv, long long seed) {
    const ExperimentConfig cfg = load(config_path, "", seed);
    std::vector<double> dts;
    std::stringstream ss(dt_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) dts.push_back(std::stod(tok));
    SimulationOutput sim;
    sim.initial.u = build_ic(cfg.ic_u, cfg.model.basis, cfg.seed);
    if (cfg.model.second_order())
        sim.initial.ut = build_ic(cfg.ic_ut, cfg.model.basis, cfg.seed + 1);
    std::optional<ControlSetup> cs;
    if (cfg.has_controller) {
        ControlSetup c;
        c.spec = cfg.controller;
        if (cfg.target == TargetType::Trajectory) {
            ModelState v0;
            v0.u = build_ic(cfg.ic_v, cfg.model.basis, cfg.seed + 2);
            if (cfg.model.second_order())
                v0.ut = build_ic(cfg.ic_vt, cfg.model.basis, cfg.seed + 3);
            c.trajectory0 = std::move(v0);
        } else {
            c.fixed_target = SpectralField(cfg.model.basis);
        }
        cs = std::move(c);
    }
    const OrderCheck oc = richardson_order_check(cfg.model, cs, sim.initial, cfg.integrator, dts);
    nlohmann::json j;
    j["status"] = oc.status == OrderCheck::Status::Ok ? "ok"
                  : oc.status == OrderCheck::Status::Degenerate ? "degenerate"
                                                                : "failure";
    j["observed_order"] = oc.observed_order;
    j["diffs"] = oc.diffs;
    std::cout << j.dump(2) << "\n";
    return oc.status == OrderCheck::Status::Ok ? kExitOk : kExitNotCertifiable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-Galerkin laboratory for finite-mode feedback stabilization"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis, values_csv, dt_csv;
    long long seed = -1;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        if (needs_out) sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "seed override");
    };

    CLI::App* certify_cmd = app.add_subcommand("certify", "evaluate the sufficient conditions");
    add_common(certify_cmd, true);
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one experiment");
    add_common(simulate_cmd, true);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "simulate+analyze over a parameter axis");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--axis", axis, "dotted config path, e.g. controller.mu")->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();
    CLI::App* order_cmd = app.add_subcommand("check-order", "Richardson convergence order");
    add_common(order_cmd, false);
    order_cmd->add_option("--dt-list", dt_csv, "comma-separated dt values (>= 3)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify_cmd->parsed()) return run_certify(config_path, out_dir, seed);
        if (simulate_cmd->parsed()) return run_simulate(config_path, out_dir, seed);
        if (sweep_cmd->parsed()) return run_sweep(config_path, out_dir, seed, axis, values_csv);
        if (order_cmd->parsed()) return run_check_order(config_path, dt_csv, seed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
