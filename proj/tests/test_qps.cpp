#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "aqcel/qps.hpp"
#include "aqcel/sweep.hpp"

using namespace aqcel;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data_path(const std::string& name) { return std::string(AQCEL_DATA_DIR) + "/" + name; }

EmissionHistogram exact_histogram(const QPSParams& p) {
    const Circuit c = build_qps(p);
    const auto l = qps_layout(p.n_steps);
    const auto pq = l.particle_qubits();
    return emission_histogram(marginal_distribution(evolve(c, qps_initial_state(l)), std::span<const Qubit>(pq)), l, 1);
}

}  // namespace

TEST(Layout, TwoSteps) {
    const auto l = qps_layout(2);
    EXPECT_EQ(l.particle_qubit_count(), 9);
    EXPECT_EQ(l.num_qubits, 15);
    EXPECT_EQ(l.ancillas, (std::vector<Qubit>{12, 13, 14}));
    EXPECT_EQ(l.history.size(), 2u);
    EXPECT_EQ(l.history[1].size(), 2u);
    const auto back = layout_from_json(to_json(l));
    EXPECT_EQ(back.registers, l.registers);
    EXPECT_EQ(back.ancillas, l.ancillas);
}

TEST(Layout, UnsupportedSteps) {
    EXPECT_THROW(qps_layout(3), Unsupported);
    QPSParams p;
    p.n_steps = 0;
    EXPECT_THROW(build_qps(p), Unsupported);
    p.n_steps = 1;
    p.initial_particles = {"010"};
    EXPECT_THROW(build_qps(p), std::invalid_argument);
}

TEST(Build, OneSeedParticleAfterPreparation) {
    QPSParams p;
    const Circuit c = build_qps(p);
    const auto l = qps_layout(2);
    Circuit prep = c.empty_like();
    for (const auto& g : c.gates()) {
        if (g.kind != GateKind::X || !g.controls.empty()) break;
        prep.append(g);
    }
    const auto sv = evolve(prep, qps_initial_state(l));
    const auto pq = l.particle_qubits();
    const auto d = marginal_distribution(sv, std::span<const Qubit>(pq));
    ASSERT_EQ(d.probs.size(), 1u);
    EXPECT_EQ(d.probs.begin()->first, "100000000");
}

TEST(CountEmissions, Examples) {
    const auto l = qps_layout(2);
    EXPECT_EQ(count_emissions("100000000", l, 1), 0);
    EXPECT_EQ(count_emissions("100001000", l, 1), 1);
    EXPECT_EQ(count_emissions("100110101", l, 1), 2);
    EXPECT_EQ(count_emissions("000000000", l, 1), std::nullopt);
    EXPECT_THROW(count_emissions("1000", l, 1), std::invalid_argument);
}

TEST(Histogram, CountsUnphysicalSamples) {
    const auto l = qps_layout(1);
    const auto h = emission_histogram(std::vector<std::string>{"100000", "100001", "100001", "000000"}, l, 1);
    EXPECT_DOUBLE_EQ(h.fraction[0], 0.25);
    EXPECT_DOUBLE_EQ(h.fraction[1], 0.5);
    EXPECT_DOUBLE_EQ(h.unphysical, 0.25);
    EXPECT_THROW(emission_histogram(std::vector<std::string>{}, l, 1), std::invalid_argument);
}

// Reference values from an independent numpy simulation of the checked-in
// circuit files.
TEST(Histogram, MatchesReferenceSimulation) {
    QPSParams p;
    auto h = exact_histogram(p);
    EXPECT_NEAR(h.fraction[0], 0.568046742180927, 1e-9);
    EXPECT_NEAR(h.fraction[1], 0.2904309833015829, 1e-9);
    EXPECT_NEAR(h.fraction[2], 0.1415222745174902, 1e-9);
    EXPECT_NEAR(h.unphysical, 0.0, 1e-12);

    p.n_steps = 1;
    h = exact_histogram(p);
    EXPECT_NEAR(h.fraction[0], 0.7880347652667219, 1e-9);
    EXPECT_NEAR(h.fraction[1], 0.21196523473327833, 1e-9);

    p.n_steps = 2;
    p.g12 = 0;
    h = exact_histogram(p);
    EXPECT_NEAR(h.fraction[0], 0.5945205479701943, 1e-9);
    EXPECT_NEAR(h.fraction[1], 0.31244341998324493, 1e-9);
    EXPECT_NEAR(h.fraction[2], 0.09303603204656066, 1e-9);
}

TEST(Histogram, MixingChangesTwoEmissionRate) {
    QPSParams on, off;
    off.g12 = 0;
    EXPECT_GT(std::abs(exact_histogram(on).fraction[2] - exact_histogram(off).fraction[2]), 0.02);
}

TEST(Histogram, SampledMatchesExact) {
    QPSParams p;
    const Circuit c = build_qps(p);
    const auto l = qps_layout(2);
    const auto pq = l.particle_qubits();
    const auto d = marginal_distribution(evolve(c, qps_initial_state(l)), std::span<const Qubit>(pq));
    const auto exact = emission_histogram(d, l, 1);
    const auto shot = emission_histogram(sample(d, 100000, 4), l, 1);
    for (std::size_t k = 0; k < exact.fraction.size(); ++k) EXPECT_NEAR(shot.fraction[k], exact.fraction[k], 0.01);
}

TEST(DataFiles, MatchGenerator) {
    const auto params = read_qps_params(data_path("qps_params.json"));
    for (int steps : {1, 2}) {
        QPSParams p = params;
        p.n_steps = steps;
        const std::string name = "qps" + std::to_string(steps);
        EXPECT_EQ(emit_circuit(build_qps(p)), slurp(data_path(name + ".circ"))) << name;
        EXPECT_EQ(nlohmann::json::parse(slurp(data_path(name + "_layout.json"))), to_json(qps_layout(steps)));
    }
}

TEST(Params, JsonRoundTrip) {
    QPSParams p;
    p.g12 = 0.25;
    p.step_weights = {0.1, 0.2};
    const auto q = qps_params_from_json(to_json(p));
    EXPECT_EQ(q.g12, 0.25);
    EXPECT_EQ(q.step_weights, p.step_weights);
    const auto partial = qps_params_from_json(nlohmann::json{{"g1", 3.0}});
    EXPECT_EQ(partial.g1, 3.0);
    EXPECT_EQ(partial.g2, QPSParams{}.g2);
}
