#include <gtest/gtest.h>

#include <random>

#include "aqcel/distribution.hpp"
#include "aqcel/labels.hpp"

using namespace aqcel;

namespace {

GateInst with_id(GateInst g, GateId id, std::optional<GateId> link = std::nullopt) {
    g.id = id;
    g.pair_link = link;
    return g;
}

std::vector<Qubit> qs(std::initializer_list<Qubit> l) { return l; }

LabelStore bell_store() {
    LabelStore s(3);
    s.propagate(with_id(gates::h(0), 0));
    s.apply_measurement_result(qs({0}), {"0", "1"});
    s.propagate(with_id(gates::cx(0, 1), 1));
    return s;
}

}  // namespace

TEST(Propagate, BasisFlips) {
    auto s = LabelStore::from_basis("01");
    EXPECT_EQ(s.label(1), StateLabel::one());
    s.propagate(with_id(gates::x(0), 0));
    s.propagate(with_id(gates::x(1), 1));
    EXPECT_EQ(s.label(0), StateLabel::one());
    EXPECT_EQ(s.label(1), StateLabel::zero());
}

TEST(Propagate, HadamardGivesUnknown) {
    LabelStore s(1);
    s.propagate(with_id(gates::h(0), 0));
    EXPECT_EQ(s.label(0).kind, LabelKind::Unknown);
}

TEST(Propagate, CxFromSuperposControlBuildsBellPair) {
    auto s = bell_store();
    ASSERT_EQ(s.label(0).kind, LabelKind::Superpos);
    EXPECT_EQ(s.label(1).kind, LabelKind::Superpos);

    LabelStore up(2, {.bell_upgrade = true});
    up.apply_measurement_result(qs({0}), {"0", "1"});
    up.propagate(with_id(gates::cx(0, 1), 0));
    EXPECT_EQ(up.label(0).kind, LabelKind::Bell);
    EXPECT_EQ(up.label(1), StateLabel::bell(up.label(0).group, 0));
    EXPECT_EQ(up.possible_patterns(qs({0, 1})), (std::set<std::string>{"00", "11"}));
}

TEST(Propagate, XFlipsBellParity) {
    LabelStore s(2);
    s.apply_measurement_result(qs({0, 1}), {"00", "11"});
    s.propagate(with_id(gates::x(1), 0));
    EXPECT_EQ(s.possible_patterns(qs({0, 1})), (std::set<std::string>{"01", "10"}));
}

TEST(Propagate, CxWithBellControlJoinsGroup) {
    LabelStore s(3);
    s.apply_measurement_result(qs({0, 1}), {"01", "10"});
    s.propagate(with_id(gates::cx(1, 2), 0));
    EXPECT_EQ(s.label(2).kind, LabelKind::Bell);
    EXPECT_EQ(s.group_members(s.label(0).group).size(), 3u);
    EXPECT_EQ(s.possible_patterns(qs({0, 2})), (std::set<std::string>{"01", "10"}));
}

TEST(Propagate, DiagonalGatesKeepLabelsUnlessStrict) {
    LabelStore s(2);
    s.propagate(with_id(gates::x(1), 0));
    s.propagate(with_id(gates::rz(0.3, 1), 1));
    EXPECT_EQ(s.label(1), StateLabel::one());

    LabelStore strict(2, {.strict_paper = true});
    strict.propagate(with_id(gates::x(1), 0));
    strict.propagate(with_id(gates::rz(0.3, 1), 1));
    EXPECT_EQ(strict.label(1).kind, LabelKind::Unknown);
}

TEST(Propagate, ZeroControlLeavesTarget) {
    LabelStore s(2);
    s.propagate(with_id(gates::cx(0, 1), 0));
    EXPECT_EQ(s.label(1), StateLabel::zero());
    EXPECT_EQ(s.history(1).last_gate, 0);
    EXPECT_EQ(s.history(0).last_gate, -1);
}

TEST(Classify, Examples) {
    LabelStore s(4);
    s.apply_measurement_result(qs({0}), {"0", "1"});
    EXPECT_EQ(classify(s, gates::cx(0, 3)).kind, DecisionKind::KeepAsIs);
    EXPECT_EQ(classify(s, gates::cx(1, 3)).kind, DecisionKind::DeleteGate);

    s.apply_measurement_result(qs({1, 2}), {"00", "11"});
    auto d = classify(s, gates::ccx(1, 2, 3));
    EXPECT_EQ(d.kind, DecisionKind::StripControls);
    EXPECT_EQ(d.qubits, qs({2}));

    s.propagate(with_id(gates::x(2), 0));
    EXPECT_EQ(classify(s, gates::ccx(1, 2, 3)).kind, DecisionKind::DeleteGate);

    LabelStore u(3);
    u.propagate(with_id(gates::h(0), 0));
    u.propagate(with_id(gates::x(1), 1));
    d = classify(u, gates::ccx(0, 1, 2));
    EXPECT_EQ(d.kind, DecisionKind::Measure);
    EXPECT_EQ(d.qubits, qs({0, 1}));

    LabelStore o(2);
    o.propagate(with_id(gates::x(0), 0));
    d = classify(o, gates::cx(0, 1));
    EXPECT_EQ(d.kind, DecisionKind::StripControls);
    EXPECT_EQ(d.qubits, qs({0}));
}

TEST(Measurement, FoldsSupportIntoLabels) {
    LabelStore s(4);
    s.apply_measurement_result(qs({0, 1}), {"00", "11"});
    EXPECT_EQ(s.label(0), StateLabel::bell(s.label(0).group, 0));
    EXPECT_EQ(s.label(1), StateLabel::bell(s.label(0).group, 0));

    s.apply_measurement_result(qs({2, 3}), {"00", "01", "11"});
    EXPECT_EQ(s.label(2).kind, LabelKind::Superpos);
    EXPECT_EQ(s.label(3).kind, LabelKind::Superpos);

    s.apply_measurement_result(qs({3}), {"1"});
    EXPECT_EQ(s.label(3), StateLabel::one());

    EXPECT_THROW(s.apply_measurement_result(qs({2}), {}), EmptySupport);
    EXPECT_THROW(s.apply_measurement_result(qs({2}), {"01"}), std::invalid_argument);
}

TEST(Measurement, MergesBellGroups) {
    LabelStore s(4);
    s.apply_measurement_result(qs({0, 1}), {"00", "11"});
    s.apply_measurement_result(qs({2, 3}), {"01", "10"});
    ASSERT_NE(s.label(0).group, s.label(2).group);
    s.apply_measurement_result(qs({1, 2}), {"01", "10"});
    EXPECT_EQ(s.group_count(), 1u);
    EXPECT_EQ(s.possible_patterns(qs({0, 3})), (std::set<std::string>{"00", "11"}));
}

TEST(Measurement, SingleValueLeavesGroup) {
    LabelStore s(3);
    s.apply_measurement_result(qs({0, 1}), {"00", "11"});
    s.apply_measurement_result(qs({0}), {"0"});
    EXPECT_EQ(s.label(0), StateLabel::zero());
    EXPECT_EQ(s.label(1).kind, LabelKind::Superpos);
    EXPECT_EQ(s.group_count(), 0u);
}

TEST(Revert, RestoresTargetOnIntactPair) {
    LabelStore s(3);
    s.propagate(with_id(gates::x(0), 0));
    s.propagate(with_id(gates::x(1), 1));
    const GateInst fwd = with_id(gates::rccx(0, 1, 2), 2, 3);
    s.propagate(fwd);
    EXPECT_EQ(s.label(2), StateLabel::one());
    EXPECT_TRUE(s.revert_on_pair(with_id(gates::rccxdg(0, 1, 2), 3, 2)));
    EXPECT_EQ(s.label(2), StateLabel::zero());
}

TEST(Revert, RefusesWhenControlRewritten) {
    LabelStore s(3);
    s.propagate(with_id(gates::h(0), 0));
    s.propagate(with_id(gates::rccx(0, 1, 2), 1, 3));
    s.propagate(with_id(gates::h(0), 2));
    const auto before = s.labels();
    EXPECT_FALSE(s.revert_on_pair(with_id(gates::rccxdg(0, 1, 2), 3, 1)));
    EXPECT_EQ(s.labels(), before);
    EXPECT_FALSE(s.revert_on_pair(with_id(gates::cx(0, 2), 4)));
}

// Every label claim must hold on the exact state, for random gate sequences
// on basis inputs.
TEST(LabelSoundness, RandomCircuits) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> kind(0, 5), qubit(0, 4);
    std::uniform_real_distribution<double> ang(-3, 3);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 5;
        std::string init(n, '0');
        for (auto& ch : init) ch = qubit(rng) < 2 ? '1' : '0';
        auto labels = LabelStore::from_basis(init, {.bell_upgrade = trial % 2 == 1});
        auto sv = StateVectord::basis(init);
        for (int k = 0; k < 25; ++k) {
            const Qubit a = qubit(rng);
            Qubit b = qubit(rng);
            while (b == a) b = qubit(rng);
            Qubit c = qubit(rng);
            while (c == a || c == b) c = qubit(rng);
            GateInst g;
            switch (kind(rng)) {
                case 0: g = gates::x(a); break;
                case 1: g = gates::ry(ang(rng), a); break;
                case 2: g = gates::cx(a, b); break;
                case 3: g = gates::ccx(a, b, c); break;
                case 4: g = gates::rz(ang(rng), a); break;
                default: g = gates::cry(ang(rng), a, b); break;
            }
            g.id = k;
            sv.apply(g);
            labels.propagate(g);
            // Occasionally fold in an exact single-qubit measurement.
            if (k % 7 == 3) {
                const std::vector<Qubit> m{a, b};
                const auto d = marginal_distribution(sv, std::span<const Qubit>(m));
                std::set<std::string> sup;
                for (const auto& [bits, p] : d.probs)
                    if (p > 1e-12) sup.insert(bits);
                labels.apply_measurement_result(m, sup);
            }
            for (Qubit p = 0; p < n; ++p)
                for (Qubit q = p + 1; q < n; ++q) {
                    const std::vector<Qubit> pair{p, q};
                    const auto allowed = labels.possible_patterns(pair);
                    const auto d = marginal_distribution(sv, std::span<const Qubit>(pair));
                    for (const auto& [bits, prob] : d.probs)
                        if (prob > 1e-10)
                            ASSERT_TRUE(allowed.count(bits))
                                << "trial " << trial << " gate " << k << " pair " << p << q << " " << bits;
                }
        }
    }
}
