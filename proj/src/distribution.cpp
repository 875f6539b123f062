#include "aqcel/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace aqcel {

double Distribution::total() const {
    double s = 0;
    for (const auto& [k, p] : probs) s += p;
    return s;
}

std::size_t Distribution::width() const {
    if (!qubits.empty()) return qubits.size();
    return probs.empty() ? 0 : probs.begin()->first.size();
}

Distribution sample(const Distribution& d, std::size_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sample: shots must be >= 1");
    if (d.probs.empty()) throw std::invalid_argument("sample: empty distribution");
    std::vector<std::string> keys;
    std::vector<double> weights;
    for (const auto& [k, p] : d.probs) {
        keys.push_back(k);
        weights.push_back(p);
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::size_t> counts(keys.size(), 0);
    for (std::size_t s = 0; s < shots; ++s) ++counts[pick(rng)];

    Distribution out;
    out.qubits = d.qubits;
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (counts[i] > 0)
            out.probs.emplace(keys[i], static_cast<double>(counts[i]) / static_cast<double>(shots));
    return out;
}

double hellinger_fidelity(const Distribution& p, const Distribution& q) {
    double bc = 0;
    for (const auto& [k, pk] : p.probs) {
        const double qk = q.at(k);
        if (pk > 0 && qk > 0) bc += std::sqrt(pk * qk);
    }
    return std::clamp(bc * bc, 0.0, 1.0);
}

nlohmann::json to_json(const Distribution& d) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, p] : d.probs) j[k] = p;
    return j;
}

Distribution distribution_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("distribution must be a JSON object");
    Distribution d;
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw std::invalid_argument("probability for '" + k + "' is not a number");
        if (k.find_first_not_of("01") != std::string::npos)
            throw std::invalid_argument("key '" + k + "' is not a bitstring");
        if (width != 0 && k.size() != width)
            throw std::invalid_argument("bitstring keys have inconsistent widths");
        width = k.size();
        const double p = v.get<double>();
        if (p < 0 || p > 1) throw std::invalid_argument("probability out of [0,1] for '" + k + "'");
        d.probs[k] = p;
    }
    if (std::abs(d.total() - 1.0) > 1e-6) throw std::invalid_argument("probabilities do not sum to 1");
    return d;
}

Distribution read_distribution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open distribution file: " + path);
    return distribution_from_json(nlohmann::json::parse(in));
}

void write_distribution_file(const Distribution& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write distribution file: " + path);
    out << to_json(d).dump(2) << '\n';
}

}  // namespace aqcel
