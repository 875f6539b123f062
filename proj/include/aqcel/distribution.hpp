#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqcel/statevector.hpp"

namespace aqcel {

/// Outcome probabilities over an ordered qubit subset. Character k of each
/// key is the value of `qubits[k]`. Missing keys read as probability 0.
struct Distribution {
    std::vector<Qubit> qubits;
    std::map<std::string, double> probs;

    double at(const std::string& key) const {
        auto it = probs.find(key);
        return it == probs.end() ? 0.0 : it->second;
    }
    double total() const;
    std::size_t width() const;
};

/// Exact probabilities below this are dropped from marginals.
inline constexpr double kProbabilityFloor = 1e-15;

/// Born-rule marginal over `qubits`, in the order given.
template <typename Scalar>
Distribution marginal_distribution(const StateVector<Scalar>& sv, std::span<const Qubit> qubits) {
    Distribution d;
    d.qubits.assign(qubits.begin(), qubits.end());
    for (Qubit q : qubits)
        if (q < 0 || q >= sv.num_qubits()) throw std::out_of_range("marginal: qubit out of range");
    const std::size_t k = qubits.size();
    std::vector<double> acc(std::size_t(1) << k, 0.0);
    const auto& a = sv.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double p = static_cast<double>(std::norm(a(i)));
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t j = 0; j < k; ++j)
            if ((static_cast<std::uint64_t>(i) >> qubits[j]) & 1U) key |= std::size_t(1) << j;
        acc[key] += p;
    }
    for (std::size_t key = 0; key < acc.size(); ++key) {
        if (acc[key] < kProbabilityFloor) continue;
        std::string bits(k, '0');
        for (std::size_t j = 0; j < k; ++j)
            if ((key >> j) & 1U) bits[j] = '1';
        d.probs.emplace(std::move(bits), acc[key]);
    }
    return d;
}

/// Empirical frequencies of `shots` independent draws, reproducible per seed.
Distribution sample(const Distribution& d, std::size_t shots, std::uint64_t seed);

/// F = (sum_k sqrt(p_k q_k))^2, clamped to [0, 1].
double hellinger_fidelity(const Distribution& p, const Distribution& q);

nlohmann::json to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j);
Distribution read_distribution_file(const std::string& path);
void write_distribution_file(const Distribution& d, const std::string& path);

}  // namespace aqcel
