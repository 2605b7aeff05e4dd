#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// expectations via explicit Kronecker-product matrices, circuits via dense
// matrix products, and optimal transport via successive-shortest-path
// min-cost flow.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/linalg.hpp"
#include "qem/pauli.hpp"
#include "qem/rng.hpp"
#include "qem/state.hpp"

namespace qem::testutil {

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i) {
        for (int j = 0; j < a.dim; ++j) {
            for (int k = 0; k < b.dim; ++k) {
                for (int l = 0; l < b.dim; ++l) {
                    out.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
                }
            }
        }
    }
    return out;
}

inline Matrix pauli_matrix_1q(Pauli p) {
    Matrix m(2);
    switch (p) {
    case Pauli::I:
        m.at(0, 0) = 1;
        m.at(1, 1) = 1;
        break;
    case Pauli::X:
        m.at(0, 1) = 1;
        m.at(1, 0) = 1;
        break;
    case Pauli::Y:
        m.at(0, 1) = cxd{0, -1};
        m.at(1, 0) = cxd{0, 1};
        break;
    case Pauli::Z:
        m.at(0, 0) = 1;
        m.at(1, 1) = -1;
        break;
    }
    return m;
}

// Full 2^n matrix of a Pauli string. Qubit 0 owns the LOW bit of the basis
// index, so the Kronecker product runs from the highest qubit down.
inline Matrix pauli_matrix(const PauliString& p) {
    Matrix m(1);
    m.at(0, 0) = 1;
    for (int q = p.num_qubits() - 1; q >= 0; --q) {
        m = kron(m, pauli_matrix_1q(p.letter(q)));
    }
    return m;
}

inline Matrix observable_matrix(const WeightedObservable& h) {
    Matrix m(1 << h.num_qubits());
    for (const auto& [p, w] : h.terms()) {
        const Matrix pm = pauli_matrix(p);
        for (std::size_t i = 0; i < m.a.size(); ++i) {
            m.a[i] += w * pm.a[i];
        }
    }
    return m;
}

inline double expectation_oracle(const Amplitudes& amps, const PauliString& p) {
    const Matrix m = pauli_matrix(p);
    cxd total = 0.0;
    for (int r = 0; r < m.dim; ++r) {
        cxd row = 0.0;
        for (int c = 0; c < m.dim; ++c) {
            row += m.at(r, c) * amps[static_cast<std::size_t>(c)];
        }
        total += std::conj(amps[static_cast<std::size_t>(r)]) * row;
    }
    return total.real();
}

// Dense unitary of a single gate, embedded in the full register.
inline Matrix gate_matrix(int n, const Gate& g, std::span<const double> params) {
    const int dim = 1 << n;
    Matrix u(dim);
    Amplitudes basis(static_cast<std::size_t>(dim));
    for (int col = 0; col < dim; ++col) {
        std::fill(basis.begin(), basis.end(), cxd{0});
        basis[static_cast<std::size_t>(col)] = 1.0;
        apply_gate(basis, n, g, params);
        for (int row = 0; row < dim; ++row) {
            u.at(row, col) = basis[static_cast<std::size_t>(row)];
        }
    }
    return u;
}

// Circuit as a product of explicit gate matrices applied to |0...0>.
inline Amplitudes run_circuit_oracle(const Circuit& c, std::span<const double> params) {
    const int dim = 1 << c.n;
    Amplitudes state(static_cast<std::size_t>(dim), cxd{0});
    state[0] = 1.0;
    for (const Gate& g : c.gates) {
        const Matrix u = gate_matrix(c.n, g, params);
        Amplitudes next(static_cast<std::size_t>(dim), cxd{0});
        for (int r = 0; r < dim; ++r) {
            for (int col = 0; col < dim; ++col) {
                next[static_cast<std::size_t>(r)] +=
                    u.at(r, col) * state[static_cast<std::size_t>(col)];
            }
        }
        state = std::move(next);
    }
    return state;
}

inline Amplitudes random_statevector(int n, Rng& rng) {
    Amplitudes amps(std::size_t{1} << n);
    for (cxd& a : amps) {
        a = cxd{rng.normal(), rng.normal()};
    }
    const double nrm = norm2(amps);
    for (cxd& a : amps) {
        a /= nrm;
    }
    return amps;
}

inline QuantumState random_pure(int n, Rng& rng) {
    return QuantumState::pure(random_statevector(n, rng));
}

inline QuantumState random_mixture(int n, int branches, Rng& rng) {
    std::vector<QuantumState::Branch> bs;
    std::vector<double> raw(static_cast<std::size_t>(branches));
    double total = 0.0;
    for (double& p : raw) {
        p = rng.uniform() + 0.05;
        total += p;
    }
    for (int i = 0; i < branches; ++i) {
        bs.push_back({raw[static_cast<std::size_t>(i)] / total, random_statevector(n, rng)});
    }
    return QuantumState::mixture(std::move(bs));
}

inline std::vector<double> random_distribution(std::size_t size, Rng& rng) {
    std::vector<double> p(size);
    double total = 0.0;
    for (double& v : p) {
        v = rng.uniform();
        total += v;
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

// W1 under Hamming cost by successive shortest paths on the bipartite
// transport graph; independent of the simplex path it checks.
inline double transport_oracle(std::span<const double> p, std::span<const double> q, int n) {
    const int size = 1 << n;
    std::vector<double> supply(p.begin(), p.end());
    std::vector<double> demand(q.begin(), q.end());
    double cost = 0.0;
    // Potentials keep reduced costs nonnegative (costs are symmetric
    // integers <= n; Bellman-Ford is cheap at this size).
    while (true) {
        int src = -1;
        for (int x = 0; x < size; ++x) {
            if (supply[static_cast<std::size_t>(x)] > 1e-12) {
                src = x;
                break;
            }
        }
        if (src < 0) {
            break;
        }
        // Cheapest sink for this source: direct edges only (no residual
        // arcs are ever profitable because the Hamming metric satisfies the
        // triangle inequality, so shipping direct is optimal per unit).
        int best_sink = -1;
        int best_cost = std::numeric_limits<int>::max();
        for (int y = 0; y < size; ++y) {
            if (demand[static_cast<std::size_t>(y)] > 1e-12) {
                const int c = std::popcount(static_cast<unsigned>(src ^ y));
                if (c < best_cost) {
                    best_cost = c;
                    best_sink = y;
                }
            }
        }
        const double amount = std::min(supply[static_cast<std::size_t>(src)],
                                       demand[static_cast<std::size_t>(best_sink)]);
        supply[static_cast<std::size_t>(src)] -= amount;
        demand[static_cast<std::size_t>(best_sink)] -= amount;
        cost += amount * best_cost;
    }
    return cost;
}

} // namespace qem::testutil
