#include "aqcel/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace aqcel {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits), roles_(num_qubits, QubitRole::Data) {
    if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

void Circuit::set_role(Qubit q, QubitRole r) {
    if (q < 0 || q >= num_qubits_) throw std::out_of_range("set_role: qubit out of range");
    roles_[static_cast<std::size_t>(q)] = r;
}

std::vector<Qubit> Circuit::data_qubits() const {
    std::vector<Qubit> qs;
    for (Qubit q = 0; q < num_qubits_; ++q)
        if (role(q) == QubitRole::Data) qs.push_back(q);
    return qs;
}

std::vector<Qubit> Circuit::ancilla_qubits() const {
    std::vector<Qubit> qs;
    for (Qubit q = 0; q < num_qubits_; ++q)
        if (role(q) == QubitRole::Ancilla) qs.push_back(q);
    return qs;
}

GateId Circuit::append(GateInst g) {
    validate(g, num_qubits_);
    if (g.id < 0) g.id = next_id_;
    if (g.id < next_id_) throw InvalidGate("gate ids must strictly increase");
    next_id_ = g.id + 1;
    gates_.push_back(std::move(g));
    return gates_.back().id;
}

std::ptrdiff_t Circuit::index_of(GateId id) const {
    auto it = std::lower_bound(gates_.begin(), gates_.end(), id,
                               [](const GateInst& g, GateId v) { return g.id < v; });
    if (it == gates_.end() || it->id != id) return -1;
    return it - gates_.begin();
}

Circuit Circuit::empty_like() const {
    Circuit c(num_qubits_);
    c.roles_ = roles_;
    return c;
}

bool operator==(const Circuit& a, const Circuit& b) {
    if (a.num_qubits() != b.num_qubits() || a.roles() != b.roles() || a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ga = a[i];
        const auto& gb = b[i];
        if (!same_action(ga, gb, 0.0)) return false;
        const auto pa = ga.pair_link ? a.index_of(*ga.pair_link) : -1;
        const auto pb = gb.pair_link ? b.index_of(*gb.pair_link) : -1;
        if (pa != pb) return false;
    }
    return true;
}

std::size_t lowered_two_qubit_cost(const GateInst& g) {
    const std::size_t nc = g.controls.size();
    if (nc == 0) return 0;
    const GateKind base = base_kind(g);
    std::size_t single_control = 2;
    if (base == GateKind::X || base == GateKind::Y || base == GateKind::Z) single_control = 1;
    switch (g.kind) {
        case GateKind::CX:
        case GateKind::CZ: return 1;
        case GateKind::CRy: return 2;
        case GateKind::CCX: return 6;
        case GateKind::RCCX:
        case GateKind::RCCXdg: return 3;
        default: break;
    }
    if (nc == 1) return single_control;
    if (nc == 2 && base == GateKind::X) return 6;
    // RCCX compute/uncompute ladder into ancillas plus one singly-controlled base gate.
    return 6 * (nc - 1) + single_control;
}

TwoQubitCount two_qubit_count(const Circuit& c) {
    TwoQubitCount n;
    for (const auto& g : c.gates()) {
        n.lowered += lowered_two_qubit_cost(g);
        if (!g.controls.empty()) ++n.raw;
    }
    return n;
}

namespace {

class LineCursor {
   public:
    LineCursor(std::string_view s, int line) : s_(s), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r'))
            ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        std::string w(s_.substr(start, pos_ - start));
        std::transform(w.begin(), w.end(), w.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return w;
    }
    double number() {
        skip_ws();
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        double v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("expected number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }
    long integer() {
        skip_ws();
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        long v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("expected integer");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }
    bool peek_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line_, static_cast<int>(pos_) + 1, what);
    }

   private:
    std::string_view s_;
    int line_;
    std::size_t pos_ = 0;
};

struct PendingLink {
    std::size_t gate_index;
    long partner_index;
    int line;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::vector<PendingLink> links;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        LineCursor cur(line, line_no);
        if (cur.at_end()) continue;
        const std::string head = cur.word();
        if (head == "qubits") {
            if (have_header) cur.fail("duplicate 'qubits' directive");
            const long n = cur.integer();
            if (n < 0 || n > 64) cur.fail("qubit count out of range");
            c = Circuit(static_cast<int>(n));
            have_header = true;
            if (!cur.at_end()) cur.fail("trailing input");
            continue;
        }
        if (!have_header) cur.fail("'qubits N' must come first");
        if (head == "ancilla") {
            while (!cur.at_end()) {
                const long q = cur.integer();
                if (q < 0 || q >= c.num_qubits()) cur.fail("qubit index out of range");
                c.set_role(static_cast<Qubit>(q), QubitRole::Ancilla);
            }
            continue;
        }

        auto kind = kind_from_name(head);
        if (!kind) cur.fail("unknown gate '" + head + "'");
        GateInst g;
        g.kind = *kind;
        if (g.kind == GateKind::MCU) {
            cur.expect('(');
            auto base = kind_from_name(cur.word());
            if (!base || !is_single_qubit_kind(*base)) cur.fail("mcu base must be a single-qubit gate");
            g.base = *base;
            while (cur.consume(',')) g.params.push_back(cur.number());
            cur.expect(')');
        } else if (cur.consume('(')) {
            g.params.push_back(cur.number());
            while (cur.consume(',')) g.params.push_back(cur.number());
            cur.expect(')');
        }

        std::vector<Qubit> operands;
        bool split = false;
        long partner = -1;
        while (!cur.at_end()) {
            if (cur.consume(';')) {
                if (g.kind != GateKind::MCU || split) cur.fail("unexpected ';'");
                g.controls = operands;
                operands.clear();
                split = true;
                continue;
            }
            if (cur.consume('@')) {
                partner = cur.integer();
                if (!cur.at_end()) cur.fail("pair link must end the line");
                break;
            }
            if (!cur.peek_digit()) cur.fail("expected qubit index");
            const long q = cur.integer();
            if (q < 0 || q >= c.num_qubits()) cur.fail("qubit index out of range");
            operands.push_back(static_cast<Qubit>(q));
        }
        if (g.kind == GateKind::MCU) {
            if (!split) cur.fail("mcu needs 'controls ; target'");
            g.targets = operands;
        } else {
            if (operands.empty()) cur.fail("missing qubit operands");
            g.targets = {operands.back()};
            operands.pop_back();
            g.controls = operands;
        }
        try {
            c.append(g);
        } catch (const InvalidGate& e) {
            cur.fail(e.what());
        }
        if (partner >= 0) links.push_back({c.size() - 1, partner, line_no});
    }
    if (!have_header) throw ParseError(1, 1, "missing 'qubits N' directive");

    // Pair links are written as sequence indices; ids equal indices on parse.
    std::vector<GateInst> gates = c.gates();
    for (const auto& l : links) {
        if (l.partner_index < 0 || static_cast<std::size_t>(l.partner_index) >= gates.size())
            throw ParseError(l.line, 1, "pair link index out of range");
        gates[l.gate_index].pair_link = gates[static_cast<std::size_t>(l.partner_index)].id;
    }
    for (const auto& l : links) {
        const auto& partner = gates[static_cast<std::size_t>(l.partner_index)];
        if (!partner.pair_link || *partner.pair_link != gates[l.gate_index].id)
            throw ParseError(l.line, 1, "pair link is not symmetric");
    }
    Circuit fresh(c.num_qubits());
    for (Qubit q = 0; q < c.num_qubits(); ++q) fresh.set_role(q, c.role(q));
    for (auto& g : gates) fresh.append(std::move(g));
    return fresh;
}

std::string format_gate(const GateInst& g) {
    std::string out(kind_name(g.kind));
    if (g.kind == GateKind::MCU) {
        out += fmt::format("({}", kind_name(g.base));
        for (double p : g.params) out += fmt::format(",{}", p);
        out += ")";
    } else if (!g.params.empty()) {
        out += fmt::format("({})", fmt::join(g.params, ","));
    }
    for (Qubit q : g.controls) out += fmt::format(" {}", q);
    if (g.kind == GateKind::MCU) out += " ;";
    for (Qubit q : g.targets) out += fmt::format(" {}", q);
    return out;
}

std::string emit_circuit(const Circuit& c) {
    std::string out = fmt::format("qubits {}\n", c.num_qubits());
    if (const auto anc = c.ancilla_qubits(); !anc.empty())
        out += fmt::format("ancilla {}\n", fmt::join(anc, " "));
    for (const auto& g : c.gates()) {
        out += format_gate(g);
        if (g.pair_link) {
            const auto idx = c.index_of(*g.pair_link);
            if (idx >= 0) out += fmt::format(" @{}", idx);
        }
        out += '\n';
    }
    return out;
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

void write_circuit_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file: " + path);
    out << emit_circuit(c);
}

}  // namespace aqcel
