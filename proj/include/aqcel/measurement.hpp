#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "aqcel/circuit.hpp"
#include "aqcel/distribution.hpp"

namespace aqcel {

enum class BackendMode { Exact, Sampled };

/// Z-basis measurement of a few qubits after a circuit prefix. Exact mode
/// returns Born-rule marginals; sampled mode draws `shots` outcomes with a
/// generator seeded from (seed, stream, qubits), so repeated calls with the
/// same arguments agree.
class MeasurementBackend {
   public:
    static MeasurementBackend exact() { return MeasurementBackend(BackendMode::Exact, 1, 0); }
    static MeasurementBackend sampled(std::size_t shots, std::uint64_t seed);

    BackendMode mode() const { return mode_; }
    std::size_t shots() const { return shots_; }
    std::uint64_t seed() const { return seed_; }

    /// `stream` separates independent measurements within one run.
    Distribution measure(const StateVectord& state, std::span<const Qubit> qubits,
                         std::uint64_t stream) const;

    /// Evolves `prefix` from `initial_bits` and measures; the stream is the
    /// prefix length.
    Distribution measure(const Circuit& prefix, std::string_view initial_bits,
                         std::span<const Qubit> qubits) const;

   private:
    MeasurementBackend(BackendMode mode, std::size_t shots, std::uint64_t seed)
        : mode_(mode), shots_(shots), seed_(seed) {}

    BackendMode mode_;
    std::size_t shots_;
    std::uint64_t seed_;
};

}  // namespace aqcel
