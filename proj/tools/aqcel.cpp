#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "aqcel/qps.hpp"
#include "aqcel/sweep.hpp"

namespace {

using namespace aqcel;

struct OptFlags {
    std::string circuit;
    std::string initial;
    double threshold = 0;
    std::string backend = "exact";
    std::size_t shots = 100000;
    std::uint64_t seed = 0;
    bool v1 = false;
    bool strict_paper = false;
    bool bell_upgrade = false;
    bool trace_labels = false;
};

std::uint64_t default_seed() {
    const char* s = std::getenv("AQCEL_SEED");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (*end != '\0') {
        fmt::print(stderr, "error: AQCEL_SEED must be a non-negative integer\n");
        std::exit(2);
    }
    return v;
}

void add_opt_flags(CLI::App* cmd, OptFlags& f) {
    cmd->add_option("--circuit", f.circuit, "circuit file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--initial", f.initial, "initial basis string, qubit 0 leftmost (default all zeros)");
    cmd->add_option("--backend", f.backend, "measurement backend")->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--shots", f.shots, "shots per measurement (sampled backend)")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "sampling seed (default $AQCEL_SEED or 0)");
    cmd->add_flag("--v1", f.v1, "measure every controlled gate; no labels, no CX-pair removal");
    cmd->add_flag("--strict-paper", f.strict_paper, "diagonal gates send their target label to unknown");
    cmd->add_flag("--bell-upgrade", f.bell_upgrade, "CX from a 0/1 control onto |0> forms a Bell group");
    cmd->add_flag("--trace-labels", f.trace_labels, "include per-gate labels in the report");
}

OptimizerConfig make_config(const OptFlags& f) {
    OptimizerConfig cfg;
    cfg.threshold = f.threshold;
    cfg.backend = f.backend == "sampled" ? BackendMode::Sampled : BackendMode::Exact;
    cfg.shots = f.shots;
    cfg.seed = f.seed;
    cfg.label_manager = !f.v1;
    cfg.strict_paper = f.strict_paper;
    cfg.bell_upgrade = f.bell_upgrade;
    cfg.trace_labels = f.trace_labels;
    cfg.validate();
    return cfg;
}

std::string initial_for(const Circuit& c, const std::string& given) {
    return given.empty() ? std::string(static_cast<std::size_t>(c.num_qubits()), '0') : given;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

int cmd_optimize(const OptFlags& f, const std::string& out_path, const std::string& report_path) {
    const auto cfg = make_config(f);
    const Circuit c = read_circuit_file(f.circuit);
    const auto res = optimize(c, initial_for(c, f.initial), cfg);
    const auto& r = res.report;
    if (!out_path.empty()) write_circuit_file(res.circuit, out_path);
    if (!report_path.empty()) write_text(report_path, r.to_json().dump(2) + "\n");
    fmt::print("two-qubit gates (lowered): {} -> {}\n", r.two_qubit_before.lowered, r.two_qubit_after.lowered);
    fmt::print("measurements: {} performed, {} skipped\n", r.measurements_performed, r.measurements_skipped);
    fmt::print("gates deleted: {}, controls removed: {}, cx pairs removed: {}\n", r.gates_deleted,
               r.controls_removed, r.cx_pairs_removed);
    return 0;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stod(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Initial-state-dependent quantum circuit optimizer"};
    app.require_subcommand(1);

    OptFlags of;
    of.seed = default_seed();
    std::string out_path, report_path;
    auto* opt = app.add_subcommand("optimize", "optimize one circuit");
    add_opt_flags(opt, of);
    opt->add_option("--threshold", of.threshold, "noise threshold in [0, 1]");
    opt->add_option("--out", out_path, "optimized circuit file");
    opt->add_option("--report", report_path, "report JSON file");

    OptFlags sf;
    sf.seed = default_seed();
    std::string thresholds = "0,0.005,0.01,0.05,0.1,0.15,0.2,0.3";
    std::size_t n_seeds = 1;
    std::string csv_path, json_path;
    auto* sweep = app.add_subcommand("sweep", "optimize over a list of thresholds and seeds");
    add_opt_flags(sweep, sf);
    sweep->add_option("--thresholds", thresholds, "comma-separated thresholds");
    sweep->add_option("--seeds", n_seeds, "number of consecutive seeds from --seed")->check(CLI::PositiveNumber);
    sweep->add_option("--csv", csv_path, "per-run CSV output");
    sweep->add_option("--json", json_path, "per-threshold JSON output");

    int steps = 2;
    std::string params_path, qps_out, layout_out, hist_out;
    std::optional<double> g12;
    auto* qps = app.add_subcommand("qps", "generate a parton-shower benchmark circuit");
    qps->add_option("--steps", steps, "evolution steps (1 or 2)");
    qps->add_option("--params", params_path, "parameter JSON file")->check(CLI::ExistingFile);
    qps->add_option("--g12", g12, "override the mixing coupling");
    qps->add_option("--out", qps_out, "circuit file");
    qps->add_option("--layout", layout_out, "register layout JSON file");
    qps->add_option("--histogram", hist_out, "noiseless emission histogram JSON file");

    std::string sim_circuit, sim_initial, sim_out, sim_qubits;
    std::size_t sim_shots = 0;
    std::uint64_t sim_seed = default_seed();
    auto* sim = app.add_subcommand("simulate", "noiseless output distribution");
    sim->add_option("--circuit", sim_circuit, "circuit file")->required()->check(CLI::ExistingFile);
    sim->add_option("--initial", sim_initial, "initial basis string (default all zeros)");
    sim->add_option("--qubits", sim_qubits, "comma-separated qubits (default data qubits)");
    sim->add_option("--shots", sim_shots, "sample this many shots instead of exact probabilities");
    sim->add_option("--seed", sim_seed, "sampling seed (default $AQCEL_SEED or 0)");
    sim->add_option("--out", sim_out, "distribution JSON file (default stdout)");

    std::string fp, fq;
    auto* fid = app.add_subcommand("fidelity", "Hellinger fidelity of two distribution files");
    fid->add_option("p", fp, "first distribution")->required()->check(CLI::ExistingFile);
    fid->add_option("q", fq, "second distribution")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*opt) return cmd_optimize(of, out_path, report_path);

        if (*sweep) {
            const auto cfg = make_config(sf);
            const Circuit c = read_circuit_file(sf.circuit);
            std::vector<std::uint64_t> seeds;
            for (std::size_t k = 0; k < n_seeds; ++k) seeds.push_back(sf.seed + k);
            const auto pts = run_sweep(c, initial_for(c, sf.initial), cfg, parse_list(thresholds), seeds);
            if (!csv_path.empty()) write_text(csv_path, sweep_csv(pts));
            if (!json_path.empty()) write_text(json_path, sweep_json(pts).dump(2) + "\n");
            fmt::print("threshold,two_qubit,measurements,fidelity,fidelity_rms\n");
            for (const auto& p : pts)
                fmt::print("{},{},{},{:.6f},{:.6f}\n", p.threshold, p.mean_two_qubit, p.mean_measurements,
                           p.mean_fidelity, p.fidelity_rms);
            return 0;
        }

        if (*qps) {
            QPSParams p = params_path.empty() ? QPSParams{} : read_qps_params(params_path);
            p.n_steps = steps;
            if (g12) p.g12 = *g12;
            const Circuit c = build_qps(p);
            const ParticleLayout l = qps_layout(steps);
            if (!qps_out.empty()) write_circuit_file(c, qps_out);
            else std::cout << emit_circuit(c);
            if (!layout_out.empty()) write_text(layout_out, to_json(l).dump(2) + "\n");
            if (!hist_out.empty()) {
                const auto pq = l.particle_qubits();
                const auto d = marginal_distribution(evolve(c, qps_initial_state(l)), std::span<const Qubit>(pq));
                write_text(hist_out, to_json(emission_histogram(d, l, 1)).dump(2) + "\n");
            }
            return 0;
        }

        if (*sim) {
            const Circuit c = read_circuit_file(sim_circuit);
            std::vector<Qubit> qs;
            if (sim_qubits.empty()) qs = c.data_qubits();
            else
                for (double v : parse_list(sim_qubits)) qs.push_back(static_cast<Qubit>(v));
            Distribution d = marginal_distribution(evolve(c, initial_for(c, sim_initial)), std::span<const Qubit>(qs));
            if (sim_shots > 0) d = sample(d, sim_shots, sim_seed);
            if (sim_out.empty()) std::cout << to_json(d).dump(2) << "\n";
            else write_distribution_file(d, sim_out);
            return 0;
        }

        if (*fid) {
            fmt::print("{:.6f}\n", hellinger_fidelity(read_distribution_file(fp), read_distribution_file(fq)));
            return 0;
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
