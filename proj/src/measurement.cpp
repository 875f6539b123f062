#include "aqcel/measurement.hpp"

#include <array>
#include <random>
#include <stdexcept>
#include <vector>

namespace aqcel {

MeasurementBackend MeasurementBackend::sampled(std::size_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sampled backend needs shots >= 1");
    return MeasurementBackend(BackendMode::Sampled, shots, seed);
}

Distribution MeasurementBackend::measure(const StateVectord& state, std::span<const Qubit> qubits,
                                         std::uint64_t stream) const {
    Distribution exact = marginal_distribution(state, qubits);
    if (mode_ == BackendMode::Exact) return exact;

    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed_),
                                     static_cast<std::uint32_t>(seed_ >> 32),
                                     static_cast<std::uint32_t>(stream),
                                     static_cast<std::uint32_t>(stream >> 32)};
    for (Qubit q : qubits) words.push_back(static_cast<std::uint32_t>(q));
    std::seed_seq seq(words.begin(), words.end());
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return sample(exact, shots_, (std::uint64_t(out[0]) << 32) | out[1]);
}

Distribution MeasurementBackend::measure(const Circuit& prefix, std::string_view initial_bits,
                                         std::span<const Qubit> qubits) const {
    return measure(evolve(prefix, initial_bits), qubits, prefix.size());
}

}  // namespace aqcel
