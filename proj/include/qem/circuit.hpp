#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qem/state.hpp"

namespace qem {

enum class GateKind { H, CNOT, RX, RY, RZ, CRX, RZZ, CPhase };

bool gate_is_parameterized(GateKind k);
bool gate_is_two_qubit(GateKind k);
std::string_view gate_name(GateKind k);
GateKind gate_kind_from_name(std::string_view name);

// One gate. Parameterized kinds read angle = scale * params[slot]; several
// gates may share a slot (QAOA layers share beta_l / alpha_l).
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    int slot = -1;
    double scale = 1.0;
};

struct Circuit {
    int n = 0;
    int param_count = 0;
    std::vector<Gate> gates;

    void add(Gate g);
    void validate() const;
};

enum class AnsatzKind { Ghz, Mixing, Butterfly, Qaoa };

AnsatzKind ansatz_from_name(std::string_view name);

// The four experiment circuit families. depth_or_layers is the layer count
// for mixing and qaoa and is ignored for ghz and butterfly (whose depth is
// fixed by n). Butterfly control orientation: lower index controls by
// default.
Circuit build_ansatz(AnsatzKind kind, int n, int depth_or_layers,
                     bool butterfly_control_low = true);

// Toy chain: RX on qubit 0 followed by a CRX ladder; n parameters.
Circuit toy_chain_circuit(int n);

// Line-oriented text format: header "n=<int> params=<int>", then one gate
// per line, e.g. "RX q0 p3", "CRX q0 q1 p4", "CNOT q0 q1". A scale factor
// other than 1 is appended to the slot token as "p3*2".
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(std::string_view text);

// Rotation convention R_P(t) = exp(-i t P / 2) throughout.
void apply_gate(Amplitudes& amps, int n, const Gate& g, std::span<const double> params);

QuantumState run_circuit(const Circuit& c, std::span<const double> params);
Amplitudes run_circuit_amps(const Circuit& c, std::span<const double> params);

} // namespace qem
