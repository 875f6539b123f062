#include "aqcel/sweep.hpp"

#include <cmath>
#include <future>

#include <fmt/format.h>

namespace aqcel {

Distribution output_distribution(const Circuit& c, std::string_view initial) {
    const auto qs = c.data_qubits();
    return marginal_distribution(evolve(c, initial), std::span<const Qubit>(qs));
}

double output_fidelity(const Circuit& a, const Circuit& b, std::string_view initial) {
    return hellinger_fidelity(output_distribution(a, initial), output_distribution(b, initial));
}

std::vector<SweepPoint> run_sweep(const Circuit& c, std::string_view initial, const OptimizerConfig& base,
                                  const std::vector<double>& thresholds, const std::vector<std::uint64_t>& seeds) {
    if (thresholds.empty()) throw std::invalid_argument("sweep needs at least one threshold");
    if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    for (double t : thresholds) {
        OptimizerConfig cfg = base;
        cfg.threshold = t;
        cfg.validate();
    }
    const std::vector<std::uint64_t> used =
        base.backend == BackendMode::Exact ? std::vector<std::uint64_t>{seeds.front()} : seeds;
    const Distribution reference = output_distribution(c, initial);
    const std::string init(initial);

    std::vector<std::vector<std::future<SweepRun>>> jobs(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        for (std::uint64_t seed : used) {
            OptimizerConfig cfg = base;
            cfg.threshold = thresholds[i];
            cfg.seed = seed;
            jobs[i].push_back(std::async(std::launch::async, [&c, &reference, init, cfg] {
                const auto res = optimize(c, init, cfg);
                SweepRun r;
                r.seed = cfg.seed;
                r.two_qubit = res.report.two_qubit_after.lowered;
                r.measurements = res.report.measurements_performed;
                r.fidelity = hellinger_fidelity(reference, output_distribution(res.circuit, init));
                return r;
            }));
        }

    std::vector<SweepPoint> pts;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        SweepPoint p;
        p.threshold = thresholds[i];
        for (auto& f : jobs[i]) p.runs.push_back(f.get());
        const double n = static_cast<double>(p.runs.size());
        for (const auto& r : p.runs) {
            p.mean_two_qubit += static_cast<double>(r.two_qubit) / n;
            p.mean_measurements += static_cast<double>(r.measurements) / n;
            p.mean_fidelity += r.fidelity / n;
        }
        double var = 0;
        for (const auto& r : p.runs) var += (r.fidelity - p.mean_fidelity) * (r.fidelity - p.mean_fidelity) / n;
        p.fidelity_rms = std::sqrt(var);
        pts.push_back(std::move(p));
    }
    return pts;
}

std::string sweep_csv(const std::vector<SweepPoint>& pts) {
    std::string out = "threshold,seed,two_qubit,measurements,fidelity\n";
    for (const auto& p : pts)
        for (const auto& r : p.runs)
            out += fmt::format("{},{},{},{},{:.9f}\n", p.threshold, r.seed, r.two_qubit, r.measurements, r.fidelity);
    return out;
}

nlohmann::json sweep_json(const std::vector<SweepPoint>& pts) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : pts) {
        nlohmann::json runs = nlohmann::json::array();
        for (const auto& r : p.runs)
            runs.push_back({{"seed", r.seed},
                            {"two_qubit", r.two_qubit},
                            {"measurements", r.measurements},
                            {"fidelity", r.fidelity}});
        j.push_back({{"threshold", p.threshold},
                     {"mean_two_qubit", p.mean_two_qubit},
                     {"mean_measurements", p.mean_measurements},
                     {"mean_fidelity", p.mean_fidelity},
                     {"fidelity_rms", p.fidelity_rms},
                     {"runs", runs}});
    }
    return j;
}

}  // namespace aqcel
