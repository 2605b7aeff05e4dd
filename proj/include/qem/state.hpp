#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "qem/linalg.hpp"
#include "qem/pauli.hpp"

namespace qem {

using Amplitudes = std::vector<cxd>;

// Pure statevector, probability-weighted mixture of statevectors, or dense
// density matrix. Immutable after construction; constructors validate
// normalization (1e-10) and, for Dense, Hermiticity and unit trace.
class QuantumState {
  public:
    struct Branch {
        double prob;
        Amplitudes amps;
    };

    static QuantumState pure(Amplitudes amps);
    static QuantumState mixture(std::vector<Branch> branches);
    static QuantumState dense(Matrix rho);

    static QuantumState basis(int n, std::uint64_t bits);
    static QuantumState ghz(int n);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }

    bool is_pure() const { return std::holds_alternative<Amplitudes>(rep_); }
    bool is_mixture() const { return std::holds_alternative<std::vector<Branch>>(rep_); }
    bool is_dense() const { return std::holds_alternative<Matrix>(rep_); }

    const Amplitudes& amplitudes() const;
    const std::vector<Branch>& branches() const;
    const Matrix& density() const;

    // Densify (n <= 10 for non-dense inputs).
    Matrix to_density() const;

  private:
    QuantumState() = default;
    int n_ = 0;
    std::variant<Amplitudes, std::vector<Branch>, Matrix> rep_;
};

// P|psi> as a fresh vector; amps.size() must be 2^(P.num_qubits()).
Amplitudes apply_pauli(std::span<const cxd> amps, const PauliString& p);

// H|psi> for a weighted Pauli sum.
Amplitudes apply_observable(std::span<const cxd> amps, const WeightedObservable& h);

double expectation(std::span<const cxd> amps, const PauliString& p);
double expectation(const QuantumState& state, const PauliString& p);
double expectation(const QuantumState& state, const WeightedObservable& h);

double fidelity(const QuantumState& a, const QuantumState& b);
double trace_distance(const QuantumState& a, const QuantumState& b);

double norm2(std::span<const cxd> amps);
cxd inner_product(std::span<const cxd> a, std::span<const cxd> b);

} // namespace qem
