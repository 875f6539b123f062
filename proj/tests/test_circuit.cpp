#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "aqcel/circuit.hpp"

using namespace aqcel;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Circuit random_circuit(std::mt19937_64& rng, int n, int len) {
    Circuit c(n);
    std::uniform_int_distribution<int> kind(0, 6), qubit(0, n - 1);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    auto distinct = [&](int k) {
        std::vector<Qubit> qs;
        while (static_cast<int>(qs.size()) < k) {
            const Qubit q = qubit(rng);
            if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
        }
        return qs;
    };
    for (int i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: c.append(gates::h(qubit(rng))); break;
            case 1: c.append(gates::ry(angle(rng), qubit(rng))); break;
            case 2: { auto q = distinct(2); c.append(gates::cx(q[0], q[1])); break; }
            case 3: { auto q = distinct(2); c.append(gates::cry(angle(rng), q[0], q[1])); break; }
            case 4: { auto q = distinct(3); c.append(gates::rccx(q[0], q[1], q[2])); break; }
            case 5: { auto q = distinct(3); c.append(gates::ccx(q[0], q[1], q[2])); break; }
            default: {
                auto q = distinct(4);
                c.append(gates::mcu(GateKind::U3, {angle(rng), angle(rng), angle(rng)}, {q[0], q[1], q[2]}, q[3]));
            }
        }
    }
    return c;
}

}  // namespace

TEST(Parse, MinimalFile) {
    const Circuit c = parse_circuit("qubits 2\ncx 0 1\n");
    ASSERT_EQ(c.num_qubits(), 2);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].kind, GateKind::CX);
    EXPECT_EQ(c[0].controls, std::vector<Qubit>{0});
    EXPECT_EQ(c[0].targets, std::vector<Qubit>{1});
}

TEST(Parse, RotationWithAngle) {
    const Circuit c = parse_circuit("qubits 4\nry(0.7) 3\n");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].kind, GateKind::Ry);
    EXPECT_DOUBLE_EQ(c[0].params.at(0), 0.7);
    EXPECT_EQ(c[0].targets, std::vector<Qubit>{3});
}

TEST(Parse, McuAncillaAndComments) {
    const Circuit c = parse_circuit(
        "# header\nqubits 5\nancilla 4\nmcu(u3,0.3,0.1,0.2) 0 1 2 ; 3  # trailing\nRCCX 0 1 4\n");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].kind, GateKind::MCU);
    EXPECT_EQ(c[0].base, GateKind::U3);
    EXPECT_EQ(c[0].controls, (std::vector<Qubit>{0, 1, 2}));
    EXPECT_EQ(c[0].targets, std::vector<Qubit>{3});
    EXPECT_EQ(c.role(4), QubitRole::Ancilla);
    EXPECT_EQ(c[1].kind, GateKind::RCCX);
}

TEST(Parse, ErrorsCarryLineAndColumn) {
    try {
        parse_circuit("qubits 2\ncx 0 5\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
    }
    EXPECT_THROW(parse_circuit("qubits 2\nfoo 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("cx 0 1\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nry 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 3\nccx 0 1\n"), ParseError);
}

TEST(Parse, PairLinksMustBeSymmetric) {
    EXPECT_NO_THROW(parse_circuit("qubits 3\nrccx 0 1 2 @1\nrccxdg 0 1 2 @0\n"));
    EXPECT_THROW(parse_circuit("qubits 3\nrccx 0 1 2 @1\nrccxdg 0 1 2\n"), ParseError);
}

TEST(RoundTrip, QpsFileIsCanonical) {
    const std::string text = slurp(std::string(AQCEL_DATA_DIR) + "/qps2.circ");
    EXPECT_EQ(emit_circuit(parse_circuit(text)), text);
}

TEST(RoundTrip, RandomCircuits) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        const Circuit c = random_circuit(rng, 6, 25);
        EXPECT_TRUE(parse_circuit(emit_circuit(c)) == c);
    }
}

TEST(TwoQubitCount, Examples) {
    Circuit a(2);
    a.append(gates::cx(0, 1));
    a.append(gates::ry(0.3, 0));
    a.append(gates::cx(0, 1));
    EXPECT_EQ(two_qubit_count(a).lowered, 2u);

    Circuit b(2);
    b.append(gates::cry(0.3, 0, 1));
    EXPECT_EQ(two_qubit_count(b).lowered, 2u);

    Circuit c(3);
    c.append(gates::rccx(0, 1, 2));
    EXPECT_EQ(two_qubit_count(c).lowered, 3u);
    EXPECT_EQ(two_qubit_count(c).raw, 1u);

    Circuit d(3);
    d.append(gates::ccx(0, 1, 2));
    EXPECT_EQ(two_qubit_count(d).lowered, 6u);
}

TEST(TwoQubitCount, AdditiveOverConcatenation) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 30; ++k) {
        const Circuit a = random_circuit(rng, 6, 15), b = random_circuit(rng, 6, 15);
        Circuit ab(6);
        for (const auto& g : a.gates()) { GateInst x = g; x.id = -1; ab.append(x); }
        for (const auto& g : b.gates()) { GateInst x = g; x.id = -1; ab.append(x); }
        EXPECT_EQ(two_qubit_count(ab).lowered, two_qubit_count(a).lowered + two_qubit_count(b).lowered);
        EXPECT_EQ(two_qubit_count(ab).raw, two_qubit_count(a).raw + two_qubit_count(b).raw);
    }
}

TEST(Circuit, IdsStrictlyIncrease) {
    Circuit c(2);
    GateInst g = gates::x(0);
    g.id = 5;
    c.append(g);
    EXPECT_EQ(c.next_id(), 6);
    g.id = 5;
    EXPECT_THROW(c.append(g), InvalidGate);
    EXPECT_EQ(c.index_of(5), 0);
    EXPECT_EQ(c.index_of(4), -1);
}
