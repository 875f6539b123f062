#include "aqcel/qps.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace aqcel {

void QPSParams::validate() const {
    if (n_steps != 1 && n_steps != 2)
        throw Unsupported("QPS circuits exist for 1 or 2 steps, got " + std::to_string(n_steps));
    if (initial_particles.size() != 1) throw Unsupported("QPS circuits start from one particle");
    const std::string& code = initial_particles.front();
    if (code != particle::kPhi && code != particle::kF1 && code != particle::kF2 &&
        code != particle::kF1bar && code != particle::kF2bar)
        throw std::invalid_argument("unknown particle code '" + code + "'");
    if (step_weights.size() < static_cast<std::size_t>(n_steps))
        throw std::invalid_argument("need one step weight per step");
    for (double w : step_weights)
        if (!(w >= 0)) throw std::invalid_argument("step weights must be non-negative");
}

QPSParams qps_params_from_json(const nlohmann::json& j, QPSParams p) {
    p.n_steps = j.value("n_steps", p.n_steps);
    p.g1 = j.value("g1", p.g1);
    p.g2 = j.value("g2", p.g2);
    p.g12 = j.value("g12", p.g12);
    p.initial_particles = j.value("initial_particles", p.initial_particles);
    p.step_weights = j.value("step_weights", p.step_weights);
    return p;
}

QPSParams read_qps_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return qps_params_from_json(nlohmann::json::parse(in));
}

nlohmann::json to_json(const QPSParams& p) {
    return {{"n_steps", p.n_steps},
            {"g1", p.g1},
            {"g2", p.g2},
            {"g12", p.g12},
            {"initial_particles", p.initial_particles},
            {"step_weights", p.step_weights}};
}

std::vector<Qubit> ParticleLayout::particle_qubits() const {
    std::vector<Qubit> out;
    for (const auto& r : registers) out.insert(out.end(), r.begin(), r.end());
    return out;
}

ParticleLayout qps_layout(int n_steps) {
    if (n_steps != 1 && n_steps != 2)
        throw Unsupported("QPS circuits exist for 1 or 2 steps, got " + std::to_string(n_steps));
    ParticleLayout l;
    l.n_steps = n_steps;
    Qubit q = 0;
    for (int r = 0; r <= n_steps; ++r) {
        l.registers.push_back({q, q + 1, q + 2});
        q += 3;
    }
    for (int m = 1; m <= n_steps; ++m) {
        std::vector<Qubit> h;
        for (int j = 0; j < m; ++j) h.push_back(q++);
        l.history.push_back(std::move(h));
    }
    // Widest gate has four controls.
    for (int k = 0; k < 3; ++k) l.ancillas.push_back(q++);
    l.num_qubits = q;
    return l;
}

nlohmann::json to_json(const ParticleLayout& l) {
    nlohmann::json j;
    j["n_steps"] = l.n_steps;
    j["num_qubits"] = l.num_qubits;
    j["registers"] = l.registers;
    j["history"] = l.history;
    j["ancillas"] = l.ancillas;
    j["bit_order"] = {"fermion", "anti", "flavour"};
    j["codes"] = {{"vacuum", particle::kVacuum}, {"phi", particle::kPhi},
                  {"f1", particle::kF1},         {"f2", particle::kF2},
                  {"f1bar", particle::kF1bar},   {"f2bar", particle::kF2bar}};
    return j;
}

ParticleLayout layout_from_json(const nlohmann::json& j) {
    ParticleLayout l;
    l.n_steps = j.at("n_steps").get<int>();
    l.num_qubits = j.at("num_qubits").get<int>();
    l.registers = j.at("registers").get<std::vector<std::array<Qubit, 3>>>();
    l.history = j.at("history").get<std::vector<std::vector<Qubit>>>();
    l.ancillas = j.at("ancillas").get<std::vector<Qubit>>();
    if (l.registers.size() != static_cast<std::size_t>(l.n_steps) + 1)
        throw std::invalid_argument("layout: expected n_steps + 1 particle registers");
    return l;
}

QPSAngles qps_angles(const QPSParams& p) {
    QPSAngles a;
    const double mean = (p.g1 + p.g2) / 2, half = (p.g1 - p.g2) / 2;
    const double root = std::sqrt(half * half + p.g12 * p.g12);
    a.ga = mean + root;
    a.gb = mean - root;
    a.mix = std::atan2(2 * p.g12, p.g1 - p.g2);
    const double ga2 = a.ga * a.ga, gb2 = a.gb * a.gb;
    auto angle = [](double g2, double w) { return 2 * std::asin(std::sqrt(1 - std::exp(-g2 * w))); };
    for (int m = 0; m < p.n_steps; ++m) {
        const double w = p.step_weights[static_cast<std::size_t>(m)];
        a.emission.push_back({angle(ga2, w), angle(gb2, w), angle(ga2 + gb2, w)});
    }
    a.split = ga2 + gb2 > 0 ? 2 * std::asin(std::sqrt(gb2 / (ga2 + gb2))) : 0;
    return a;
}

namespace {

struct Ctl {
    Qubit q;
    bool on;
};

/// Appends a gate controlled on the given values, flipping 0-controls with X.
void controlled(Circuit& c, GateKind base, std::vector<double> params, const std::vector<Ctl>& ctls,
                Qubit target) {
    std::vector<Qubit> qs;
    for (const auto& k : ctls) {
        if (!k.on) c.append(gates::x(k.q));
        qs.push_back(k.q);
    }
    c.append(make_controlled(base, std::move(params), std::move(qs), target));
    for (const auto& k : ctls)
        if (!k.on) c.append(gates::x(k.q));
}

}  // namespace

std::string qps_initial_state(const ParticleLayout& l) { return std::string(static_cast<std::size_t>(l.num_qubits), '0'); }

Circuit build_qps(const QPSParams& p) {
    p.validate();
    const ParticleLayout l = qps_layout(p.n_steps);
    const QPSAngles a = qps_angles(p);
    Circuit c(l.num_qubits);
    for (Qubit q : l.ancillas) c.set_role(q, QubitRole::Ancilla);

    const auto& seed = p.initial_particles.front();
    for (int b = 0; b < 3; ++b)
        if (seed[static_cast<std::size_t>(b)] == '1') c.append(gates::x(l.registers[0][static_cast<std::size_t>(b)]));

    // Flavour to mass basis on every fermion.
    for (const auto& r : l.registers) c.append(gates::cry(a.mix, r[0], r[2]));

    for (int m = 1; m <= p.n_steps; ++m) {
        const auto& h = l.history[static_cast<std::size_t>(m - 1)];
        const auto& out = l.registers[static_cast<std::size_t>(m)];
        const auto& th = a.emission[static_cast<std::size_t>(m - 1)];

        for (int j = 0; j < m; ++j) {
            const auto& src = l.registers[static_cast<std::size_t>(j)];
            std::vector<Ctl> idle;
            for (int k = 0; k < m; ++k)
                if (k != j) idle.push_back({h[static_cast<std::size_t>(k)], false});
            auto with_idle = [&](std::vector<Ctl> v) {
                v.insert(v.end(), idle.begin(), idle.end());
                return v;
            };
            const Qubit hj = h[static_cast<std::size_t>(j)];
            // One rotation per particle species, keyed on the full register code.
            for (int f = 0; f < 2; ++f)
                for (int anti = 0; anti < 2; ++anti)
                    controlled(c, GateKind::Ry, {th[static_cast<std::size_t>(f)]},
                               with_idle({{src[0], true}, {src[1], anti == 1}, {src[2], f == 1}}), hj);
            controlled(c, GateKind::Ry, {th[2]}, with_idle({{src[0], false}, {src[1], false}, {src[2], true}}), hj);
        }

        for (int j = 0; j < m; ++j) {
            const auto& src = l.registers[static_cast<std::size_t>(j)];
            const Qubit hj = h[static_cast<std::size_t>(j)];
            // f -> f phi
            controlled(c, GateKind::X, {}, {{hj, true}, {src[0], true}}, out[2]);
            // phi -> f fbar: the new register takes the antifermion.
            controlled(c, GateKind::X, {}, {{hj, true}, {src[0], false}, {src[1], false}, {src[2], true}}, out[0]);
            controlled(c, GateKind::X, {}, {{hj, true}, {out[0], true}}, out[1]);
            controlled(c, GateKind::Ry, {a.split}, {{hj, true}, {out[1], true}}, out[2]);
            controlled(c, GateKind::X, {}, {{hj, true}, {out[1], true}}, src[0]);
            controlled(c, GateKind::X, {}, {{hj, true}, {out[1], true}, {out[2], false}}, src[2]);
        }
    }

    for (const auto& r : l.registers) c.append(gates::cry(-a.mix, r[0], r[2]));
    return c;
}

std::optional<int> count_emissions(const std::string& bits, const ParticleLayout& l, int initial_count) {
    if (bits.size() != static_cast<std::size_t>(l.particle_qubit_count()))
        throw std::invalid_argument("bitstring has " + std::to_string(bits.size()) + " bits, layout needs " +
                                    std::to_string(l.particle_qubit_count()));
    int occupied = 0;
    for (std::size_t r = 0; r < l.registers.size(); ++r)
        if (bits.compare(3 * r, 3, particle::kVacuum) != 0) ++occupied;
    const int emitted = occupied - initial_count;
    if (occupied == 0 || emitted < 0) return std::nullopt;
    return emitted;
}

namespace {

void add(EmissionHistogram& h, std::optional<int> e, double w) {
    if (!e || *e >= static_cast<int>(h.fraction.size())) h.unphysical += w;
    else h.fraction[static_cast<std::size_t>(*e)] += w;
}

}  // namespace

EmissionHistogram emission_histogram(const std::vector<std::string>& samples, const ParticleLayout& l,
                                     int initial_count) {
    if (samples.empty()) throw std::invalid_argument("emission histogram needs samples");
    EmissionHistogram h;
    h.fraction.assign(static_cast<std::size_t>(l.n_steps) + 1, 0.0);
    const double w = 1.0 / static_cast<double>(samples.size());
    for (const auto& s : samples) add(h, count_emissions(s, l, initial_count), w);
    return h;
}

EmissionHistogram emission_histogram(const Distribution& d, const ParticleLayout& l, int initial_count) {
    EmissionHistogram h;
    h.fraction.assign(static_cast<std::size_t>(l.n_steps) + 1, 0.0);
    const double total = d.total();
    if (!(total > 0)) throw std::invalid_argument("emission histogram needs a non-empty distribution");
    for (const auto& [bits, p] : d.probs) add(h, count_emissions(bits, l, initial_count), p / total);
    return h;
}

nlohmann::json to_json(const EmissionHistogram& h) {
    return {{"emissions", h.fraction}, {"unphysical", h.unphysical}};
}

}  // namespace aqcel
