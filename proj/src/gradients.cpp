#include "qem/gradients.hpp"

#include <cmath>
#include <stdexcept>

namespace qem {

GradBackend grad_backend_from_name(std::string_view name) {
    if (name == "adjoint") return GradBackend::Adjoint;
    if (name == "shift") return GradBackend::Shift;
    if (name == "finite-diff") return GradBackend::FiniteDiff;
    throw std::invalid_argument("unknown gradient backend '" + std::string(name) + "'");
}

std::string_view grad_backend_name(GradBackend b) {
    switch (b) {
    case GradBackend::Adjoint:
        return "adjoint";
    case GradBackend::Shift:
        return "shift";
    case GradBackend::FiniteDiff:
        return "finite-diff";
    }
    return "?";
}

namespace {

void apply_gate_inverse(Amplitudes& amps, int n, const Gate& g, std::span<const double> params) {
    if (g.kind == GateKind::H || g.kind == GateKind::CNOT) {
        apply_gate(amps, n, g, params); // self-inverse
        return;
    }
    Gate inv = g;
    inv.scale = -g.scale;
    apply_gate(amps, n, inv, params);
}

// lambda += w * (dG/dtheta) G^{-1} applied to... see sweep below. For our
// kinds, dG/dtheta = A G with A the (anti-Hermitian-scaled) generator:
//   R_P:    A = -(i/2) P
//   CRX:    A = -(i/2) |1><1|_c (x) X_t
//   CPhase: A =  i |11><11|
// The sweep accumulates dE/dtheta_gate = 2 Re <lam| A |ket>.
double generator_term(const Gate& g, const Amplitudes& lam, const Amplitudes& ket) {
    const std::uint64_t q0 = std::uint64_t{1} << g.q0;
    const std::uint64_t q1 = g.q1 >= 0 ? std::uint64_t{1} << g.q1 : 0;
    cxd acc = 0.0;
    switch (g.kind) {
    case GateKind::RX:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            acc += std::conj(lam[b]) * ket[b ^ q0];
        }
        return acc.imag(); // 2 Re[ -(i/2) <lam|X|ket> ]
    case GateKind::RY:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            const cxd y = (b & q0) ? cxd{0, 1} * ket[b ^ q0] : cxd{0, -1} * ket[b ^ q0];
            acc += std::conj(lam[b]) * y;
        }
        return acc.imag();
    case GateKind::RZ:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            acc += std::conj(lam[b]) * ((b & q0) ? -ket[b] : ket[b]);
        }
        return acc.imag();
    case GateKind::RZZ:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            const bool parity = ((b & q0) != 0) != ((b & q1) != 0);
            acc += std::conj(lam[b]) * (parity ? -ket[b] : ket[b]);
        }
        return acc.imag();
    case GateKind::CRX:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            if (b & q0) {
                acc += std::conj(lam[b]) * ket[b ^ q1];
            }
        }
        return acc.imag();
    case GateKind::CPhase:
        for (std::uint64_t b = 0; b < ket.size(); ++b) {
            if ((b & q0) && (b & q1)) {
                acc += std::conj(lam[b]) * ket[b];
            }
        }
        return -2.0 * acc.imag(); // 2 Re[ i <lam|P11|ket> ]
    default:
        throw std::invalid_argument("gate has no generator");
    }
}

std::vector<double> adjoint_sweep(const Circuit& c, std::span<const double> params,
                                  Amplitudes ket, Amplitudes lam) {
    std::vector<double> grads(static_cast<std::size_t>(c.param_count), 0.0);
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        const Gate& g = *it;
        if (gate_is_parameterized(g.kind)) {
            grads[static_cast<std::size_t>(g.slot)] += g.scale * generator_term(g, lam, ket);
        }
        apply_gate_inverse(ket, c.n, g, params);
        apply_gate_inverse(lam, c.n, g, params);
    }
    return grads;
}

} // namespace

std::vector<double> adjoint_gradient(const Circuit& c, std::span<const double> params,
                                     const WeightedObservable& h) {
    if (h.num_qubits() != c.n) {
        throw std::invalid_argument("adjoint_gradient: observable qubit count mismatch");
    }
    Amplitudes ket = run_circuit_amps(c, params);
    Amplitudes lam = apply_observable(ket, h);
    return adjoint_sweep(c, params, std::move(ket), std::move(lam));
}

std::vector<double> overlap_gradient(const Circuit& c, std::span<const double> params,
                                     std::span<const cxd> target) {
    Amplitudes ket = run_circuit_amps(c, params);
    if (target.size() != ket.size()) {
        throw std::invalid_argument("overlap_gradient: target dimension mismatch");
    }
    // H = |t><t| gives lambda = <t|psi> |t>.
    const cxd ov = inner_product(target, ket);
    Amplitudes lam(target.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
        lam[i] = target[i] * ov;
    }
    return adjoint_sweep(c, params, std::move(ket), std::move(lam));
}

double parameter_shift_gradient(const Circuit& c, std::span<const double> params,
                                const WeightedObservable& h, int slot) {
    if (slot < 0 || slot >= c.param_count) {
        throw std::invalid_argument("parameter_shift_gradient: slot out of range");
    }
    auto eval_with_gate_shift = [&](std::size_t gate_index, double delta) {
        Amplitudes amps(std::size_t{1} << c.n, cxd{0.0});
        amps[0] = 1.0;
        for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
            const Gate& g = c.gates[gi];
            if (gi == gate_index) {
                // Shift this occurrence's angle by delta: adjust the slot
                // value by delta / scale for this one application.
                std::vector<double> local(params.begin(), params.end());
                local[static_cast<std::size_t>(g.slot)] += delta / g.scale;
                apply_gate(amps, c.n, g, local);
            } else {
                apply_gate(amps, c.n, g, params);
            }
        }
        double e = 0.0;
        for (const auto& [p, w] : h.terms()) {
            e += w * expectation(std::span<const cxd>(amps), p);
        }
        return e;
    };

    double grad = 0.0;
    bool found = false;
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (!gate_is_parameterized(g.kind) || g.slot != slot) {
            continue;
        }
        if (g.kind == GateKind::CRX || g.kind == GateKind::CPhase) {
            throw std::invalid_argument("parameter_shift_gradient: slot drives a gate without a "
                                        "single-Pauli generator");
        }
        found = true;
        const double ep = eval_with_gate_shift(gi, M_PI / 2.0);
        const double em = eval_with_gate_shift(gi, -M_PI / 2.0);
        grad += g.scale * 0.5 * (ep - em);
    }
    if (!found) {
        return 0.0; // slot drives no gate
    }
    return grad;
}

std::vector<double> finite_diff_gradient(const Circuit& c, std::span<const double> params,
                                         const WeightedObservable& h, double step) {
    std::vector<double> work(params.begin(), params.end());
    std::vector<double> grads(static_cast<std::size_t>(c.param_count), 0.0);
    auto eval = [&](const std::vector<double>& p) {
        const Amplitudes amps = run_circuit_amps(c, p);
        double e = 0.0;
        for (const auto& [ps, w] : h.terms()) {
            e += w * expectation(std::span<const cxd>(amps), ps);
        }
        return e;
    };
    for (int k = 0; k < c.param_count; ++k) {
        const double saved = work[static_cast<std::size_t>(k)];
        work[static_cast<std::size_t>(k)] = saved + step;
        const double ep = eval(work);
        work[static_cast<std::size_t>(k)] = saved - step;
        const double em = eval(work);
        work[static_cast<std::size_t>(k)] = saved;
        grads[static_cast<std::size_t>(k)] = (ep - em) / (2.0 * step);
    }
    return grads;
}

std::vector<double> expectation_gradient(const Circuit& c, std::span<const double> params,
                                         const WeightedObservable& h, GradBackend backend) {
    switch (backend) {
    case GradBackend::Adjoint:
        return adjoint_gradient(c, params, h);
    case GradBackend::FiniteDiff:
        return finite_diff_gradient(c, params, h);
    case GradBackend::Shift: {
        // Shift where eligible; adjoint covers controlled-rotation slots.
        std::vector<bool> eligible(static_cast<std::size_t>(c.param_count), true);
        bool any_ineligible = false;
        for (const Gate& g : c.gates) {
            if (gate_is_parameterized(g.kind) &&
                (g.kind == GateKind::CRX || g.kind == GateKind::CPhase)) {
                eligible[static_cast<std::size_t>(g.slot)] = false;
                any_ineligible = true;
            }
        }
        std::vector<double> grads(static_cast<std::size_t>(c.param_count), 0.0);
        std::vector<double> adj;
        if (any_ineligible) {
            adj = adjoint_gradient(c, params, h);
        }
        for (int s = 0; s < c.param_count; ++s) {
            grads[static_cast<std::size_t>(s)] =
                eligible[static_cast<std::size_t>(s)]
                    ? parameter_shift_gradient(c, params, h, s)
                    : adj[static_cast<std::size_t>(s)];
        }
        return grads;
    }
    }
    throw std::invalid_argument("unknown gradient backend");
}

} // namespace qem
