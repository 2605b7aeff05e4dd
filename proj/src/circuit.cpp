#include "qem/circuit.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qem {

bool gate_is_parameterized(GateKind k) {
    switch (k) {
    case GateKind::H:
    case GateKind::CNOT:
        return false;
    default:
        return true;
    }
}

bool gate_is_two_qubit(GateKind k) {
    switch (k) {
    case GateKind::CNOT:
    case GateKind::CRX:
    case GateKind::RZZ:
    case GateKind::CPhase:
        return true;
    default:
        return false;
    }
}

std::string_view gate_name(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "H";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CRX:
        return "CRX";
    case GateKind::RZZ:
        return "RZZ";
    case GateKind::CPhase:
        return "CPHASE";
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    if (name == "H") return GateKind::H;
    if (name == "CNOT") return GateKind::CNOT;
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "CRX") return GateKind::CRX;
    if (name == "RZZ") return GateKind::RZZ;
    if (name == "CPHASE") return GateKind::CPhase;
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

AnsatzKind ansatz_from_name(std::string_view name) {
    if (name == "ghz") return AnsatzKind::Ghz;
    if (name == "mixing") return AnsatzKind::Mixing;
    if (name == "butterfly") return AnsatzKind::Butterfly;
    if (name == "qaoa") return AnsatzKind::Qaoa;
    throw std::invalid_argument("unknown ansatz '" + std::string(name) + "'");
}

void Circuit::add(Gate g) {
    gates.push_back(g);
}

void Circuit::validate() const {
    for (const Gate& g : gates) {
        if (g.q0 < 0 || g.q0 >= n) {
            throw std::invalid_argument("gate qubit out of range");
        }
        if (gate_is_two_qubit(g.kind)) {
            if (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0) {
                throw std::invalid_argument("two-qubit gate needs distinct qubits in range");
            }
        } else if (g.q1 != -1) {
            throw std::invalid_argument("single-qubit gate has a second qubit");
        }
        if (gate_is_parameterized(g.kind)) {
            if (g.slot < 0 || g.slot >= param_count) {
                throw std::invalid_argument("gate parameter slot out of range");
            }
        } else if (g.slot != -1) {
            throw std::invalid_argument("fixed gate has a parameter slot");
        }
    }
}

Circuit build_ansatz(AnsatzKind kind, int n, int depth_or_layers, bool butterfly_control_low) {
    if (n < 2) {
        throw std::invalid_argument("ansatz needs n >= 2");
    }
    Circuit c;
    c.n = n;
    switch (kind) {
    case AnsatzKind::Ghz: {
        // RX, RY, RZ on qubit 0, then a CRX chain down the register; n+2
        // parameters, depth n.
        c.param_count = n + 2;
        c.add({GateKind::RX, 0, -1, 0});
        c.add({GateKind::RY, 0, -1, 1});
        c.add({GateKind::RZ, 0, -1, 2});
        for (int q = 0; q + 1 < n; ++q) {
            c.add({GateKind::CRX, q, q + 1, 3 + q});
        }
        break;
    }
    case AnsatzKind::Mixing: {
        if (n % 2 != 0) {
            throw std::invalid_argument("mixing ansatz needs even n");
        }
        if (depth_or_layers < 1) {
            throw std::invalid_argument("mixing ansatz needs depth >= 1");
        }
        // Per layer: RY row, ZZ on pairs (0,1),(2,3),..., RY row, ZZ on
        // pairs (1,2),(3,4),...,(n-1,0). 3n parameters per layer.
        c.param_count = 3 * n * depth_or_layers;
        int slot = 0;
        for (int layer = 0; layer < depth_or_layers; ++layer) {
            for (int q = 0; q < n; ++q) {
                c.add({GateKind::RY, q, -1, slot++});
            }
            for (int q = 0; q + 1 < n; q += 2) {
                c.add({GateKind::RZZ, q, q + 1, slot++});
            }
            for (int q = 0; q < n; ++q) {
                c.add({GateKind::RY, q, -1, slot++});
            }
            for (int q = 1; q < n; q += 2) {
                c.add({GateKind::RZZ, q, (q + 1) % n, slot++});
            }
        }
        break;
    }
    case AnsatzKind::Butterfly: {
        if ((n & (n - 1)) != 0) {
            throw std::invalid_argument("butterfly ansatz needs n a power of two");
        }
        // log2(n) stages: RX on every qubit, then CRX across the FFT
        // butterfly pairing with stride 2^stage.
        int slot = 0;
        for (int stride = 1; stride < n; stride *= 2) {
            for (int q = 0; q < n; ++q) {
                c.add({GateKind::RX, q, -1, slot++});
            }
            for (int base = 0; base < n; base += 2 * stride) {
                for (int j = 0; j < stride; ++j) {
                    const int lo = base + j;
                    const int hi = base + j + stride;
                    if (butterfly_control_low) {
                        c.add({GateKind::CRX, lo, hi, slot++});
                    } else {
                        c.add({GateKind::CRX, hi, lo, slot++});
                    }
                }
            }
        }
        c.param_count = slot;
        break;
    }
    case AnsatzKind::Qaoa: {
        if (n % 2 != 0) {
            throw std::invalid_argument("qaoa ansatz needs even n");
        }
        if (depth_or_layers < 1) {
            throw std::invalid_argument("qaoa ansatz needs at least one layer");
        }
        // Hadamard wall, then per layer exp(-i beta_l H_C) with periodic
        // ZZ ring and exp(-i alpha_l sum X). Slots: beta_l = 2l,
        // alpha_l = 2l+1, shared across the layer's gates via scale 2.
        c.param_count = 2 * depth_or_layers;
        for (int q = 0; q < n; ++q) {
            c.add({GateKind::H, q});
        }
        for (int layer = 0; layer < depth_or_layers; ++layer) {
            const int beta = 2 * layer;
            const int alpha = 2 * layer + 1;
            for (int q = 0; q < n; ++q) {
                c.add({GateKind::RZZ, q, (q + 1) % n, beta, 2.0});
            }
            for (int q = 0; q < n; ++q) {
                c.add({GateKind::RX, q, -1, alpha, 2.0});
            }
        }
        break;
    }
    }
    c.validate();
    return c;
}

Circuit toy_chain_circuit(int n) {
    if (n < 2) {
        throw std::invalid_argument("toy circuit needs n >= 2");
    }
    Circuit c;
    c.n = n;
    c.param_count = n;
    c.add({GateKind::RX, 0, -1, 0});
    for (int q = 0; q + 1 < n; ++q) {
        c.add({GateKind::CRX, q, q + 1, q + 1});
    }
    c.validate();
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "n=" << c.n << " params=" << c.param_count << "\n";
    for (const Gate& g : c.gates) {
        out << gate_name(g.kind) << " q" << g.q0;
        if (gate_is_two_qubit(g.kind)) {
            out << " q" << g.q1;
        }
        if (gate_is_parameterized(g.kind)) {
            out << " p" << g.slot;
            if (g.scale != 1.0) {
                out << "*" << g.scale;
            }
        }
        out << "\n";
    }
    return out.str();
}

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("circuit text is empty");
    }
    Circuit c;
    if (std::sscanf(line.c_str(), "n=%d params=%d", &c.n, &c.param_count) != 2) {
        throw std::invalid_argument("bad circuit header: " + line);
    }
    auto parse_qubit = [](const std::string& tok) {
        if (tok.size() < 2 || tok[0] != 'q') {
            throw std::invalid_argument("bad qubit token '" + tok + "'");
        }
        return std::stoi(tok.substr(1));
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string name;
        ls >> name;
        Gate g;
        g.kind = gate_kind_from_name(name);
        std::string tok;
        ls >> tok;
        g.q0 = parse_qubit(tok);
        if (gate_is_two_qubit(g.kind)) {
            ls >> tok;
            g.q1 = parse_qubit(tok);
        }
        if (gate_is_parameterized(g.kind)) {
            ls >> tok;
            if (tok.empty() || tok[0] != 'p') {
                throw std::invalid_argument("bad slot token '" + tok + "'");
            }
            const auto star = tok.find('*');
            if (star == std::string::npos) {
                g.slot = std::stoi(tok.substr(1));
            } else {
                g.slot = std::stoi(tok.substr(1, star - 1));
                g.scale = std::stod(tok.substr(star + 1));
            }
        }
        c.add(g);
    }
    c.validate();
    return c;
}

namespace {

// In-place single-qubit 2x2 update.
void apply_1q(Amplitudes& amps, int q, cxd u00, cxd u01, cxd u10, cxd u11) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (b & bit) {
            continue;
        }
        const cxd a0 = amps[b];
        const cxd a1 = amps[b | bit];
        amps[b] = u00 * a0 + u01 * a1;
        amps[b | bit] = u10 * a0 + u11 * a1;
    }
}

} // namespace

void apply_gate(Amplitudes& amps, int n, const Gate& g, std::span<const double> params) {
    const double angle =
        gate_is_parameterized(g.kind) ? g.scale * params[static_cast<std::size_t>(g.slot)] : 0.0;
    const double half = 0.5 * angle;
    const double ch = std::cos(half);
    const double sh = std::sin(half);
    (void)n;
    switch (g.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_1q(amps, g.q0, r, r, r, -r);
        break;
    }
    case GateKind::CNOT: {
        const std::uint64_t cbit = std::uint64_t{1} << g.q0;
        const std::uint64_t tbit = std::uint64_t{1} << g.q1;
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            if ((b & cbit) && !(b & tbit)) {
                std::swap(amps[b], amps[b | tbit]);
            }
        }
        break;
    }
    case GateKind::RX:
        apply_1q(amps, g.q0, ch, cxd{0, -sh}, cxd{0, -sh}, ch);
        break;
    case GateKind::RY:
        apply_1q(amps, g.q0, ch, -sh, sh, ch);
        break;
    case GateKind::RZ:
        apply_1q(amps, g.q0, cxd{ch, -sh}, 0, 0, cxd{ch, sh});
        break;
    case GateKind::CRX: {
        const std::uint64_t cbit = std::uint64_t{1} << g.q0;
        const std::uint64_t tbit = std::uint64_t{1} << g.q1;
        const cxd off{0, -sh};
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            if (!(b & cbit) || (b & tbit)) {
                continue;
            }
            const cxd a0 = amps[b];
            const cxd a1 = amps[b | tbit];
            amps[b] = ch * a0 + off * a1;
            amps[b | tbit] = off * a0 + ch * a1;
        }
        break;
    }
    case GateKind::RZZ: {
        const std::uint64_t m0 = std::uint64_t{1} << g.q0;
        const std::uint64_t m1 = std::uint64_t{1} << g.q1;
        const cxd minus{ch, -sh}; // e^{-i angle/2} on even parity
        const cxd plus{ch, sh};
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            const bool parity = ((b & m0) != 0) != ((b & m1) != 0);
            amps[b] *= parity ? plus : minus;
        }
        break;
    }
    case GateKind::CPhase: {
        const std::uint64_t both = (std::uint64_t{1} << g.q0) | (std::uint64_t{1} << g.q1);
        const cxd phase{std::cos(angle), std::sin(angle)};
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            if ((b & both) == both) {
                amps[b] *= phase;
            }
        }
        break;
    }
    }
}

Amplitudes run_circuit_amps(const Circuit& c, std::span<const double> params) {
    if (static_cast<int>(params.size()) != c.param_count) {
        throw std::invalid_argument("run_circuit: parameter count mismatch");
    }
    Amplitudes amps(std::size_t{1} << c.n, cxd{0.0});
    amps[0] = 1.0;
    for (const Gate& g : c.gates) {
        apply_gate(amps, c.n, g, params);
    }
    return amps;
}

QuantumState run_circuit(const Circuit& c, std::span<const double> params) {
    return QuantumState::pure(run_circuit_amps(c, params));
}

} // namespace qem
