#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aqcel/optimizer.hpp"

namespace aqcel {

/// Noiseless output distribution over the data (non-ancilla) qubits.
Distribution output_distribution(const Circuit& c, std::string_view initial);

/// Hellinger fidelity of the noiseless outputs of two circuits on the same
/// initial state.
double output_fidelity(const Circuit& a, const Circuit& b, std::string_view initial);

struct SweepRun {
    std::uint64_t seed = 0;
    std::size_t two_qubit = 0;
    std::size_t measurements = 0;
    double fidelity = 0;
};

struct SweepPoint {
    double threshold = 0;
    std::vector<SweepRun> runs;
    double mean_two_qubit = 0;
    double mean_measurements = 0;
    double mean_fidelity = 0;
    /// Root-mean-square deviation of the fidelity from its mean across seeds.
    double fidelity_rms = 0;
};

/// One optimization per (threshold, seed), run concurrently. With the exact
/// backend only the first seed is used. `base` supplies everything except
/// threshold and seed.
std::vector<SweepPoint> run_sweep(const Circuit& c, std::string_view initial, const OptimizerConfig& base,
                                  const std::vector<double>& thresholds, const std::vector<std::uint64_t>& seeds);

std::string sweep_csv(const std::vector<SweepPoint>& pts);
nlohmann::json sweep_json(const std::vector<SweepPoint>& pts);

}  // namespace aqcel
