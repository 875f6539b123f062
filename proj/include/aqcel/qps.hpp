#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqcel/circuit.hpp"
#include "aqcel/distribution.hpp"

namespace aqcel {

class Unsupported : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Particle codes on a 3-qubit register, bits in register order
/// [fermion, anti, flavour]. A boson sets only the last bit.
namespace particle {
inline constexpr const char* kVacuum = "000";
inline constexpr const char* kPhi = "001";
inline constexpr const char* kF1 = "100";
inline constexpr const char* kF2 = "101";
inline constexpr const char* kF1bar = "110";
inline constexpr const char* kF2bar = "111";
}  // namespace particle

struct QPSParams {
    int n_steps = 2;
    double g1 = 2.0;
    double g2 = 1.0;
    double g12 = 1.0;
    /// One code per initial register; only a single seed particle is built.
    std::vector<std::string> initial_particles{particle::kF1};
    /// Evolution-time weight per step; emission probability 1 - exp(-g^2 w).
    std::vector<double> step_weights{0.05, 0.08};

    void validate() const;
};

/// Loads couplings and step weights; absent keys keep their defaults.
QPSParams read_qps_params(const std::string& path);
QPSParams qps_params_from_json(const nlohmann::json& j, QPSParams base = {});
nlohmann::json to_json(const QPSParams& p);

struct ParticleLayout {
    int n_steps = 0;
    /// registers[r] = qubits of particle register r, bit order as the codes.
    std::vector<std::array<Qubit, 3>> registers;
    /// history[m-1] = one-hot step-m record (bit j set: register j acted).
    std::vector<std::vector<Qubit>> history;
    std::vector<Qubit> ancillas;
    int num_qubits = 0;

    std::vector<Qubit> particle_qubits() const;
    int particle_qubit_count() const { return 3 * static_cast<int>(registers.size()); }
};

ParticleLayout qps_layout(int n_steps);
nlohmann::json to_json(const ParticleLayout& l);
ParticleLayout layout_from_json(const nlohmann::json& j);

/// Rotation angles the generator derives from the couplings.
struct QPSAngles {
    double mix = 0;  ///< flavour-to-mass basis rotation
    double ga = 0, gb = 0;
    /// emission[m-1] = {angle for an a fermion, a b fermion, a boson}
    std::vector<std::array<double, 3>> emission;
    double split = 0;  ///< flavour of a split pair
};

QPSAngles qps_angles(const QPSParams& p);

/// Throws Unsupported for n_steps outside {1, 2}.
Circuit build_qps(const QPSParams& p);

/// All-zero basis string for a QPS circuit (the seed particle is prepared
/// inside the circuit).
std::string qps_initial_state(const ParticleLayout& l);

/// Non-vacuum registers minus `initial_count`; nullopt when unphysical.
/// `bits` covers the particle qubits in layout order.
std::optional<int> count_emissions(const std::string& bits, const ParticleLayout& l, int initial_count);

struct EmissionHistogram {
    std::vector<double> fraction;  ///< index = emissions, 0..n_steps
    double unphysical = 0;
};

EmissionHistogram emission_histogram(const std::vector<std::string>& samples, const ParticleLayout& l,
                                     int initial_count);
/// Same, weighted by a distribution over the particle qubits.
EmissionHistogram emission_histogram(const Distribution& d, const ParticleLayout& l, int initial_count);
nlohmann::json to_json(const EmissionHistogram& h);

}  // namespace aqcel
