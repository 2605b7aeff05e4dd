#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qem/pauli.hpp"
#include "qem/rng.hpp"
#include "qem/simplex.hpp"
#include "qem/state.hpp"

namespace qem {

// Discriminator operator set. k_max records the locality bound used for
// enumeration; cycled-in replacements may act on more qubits.
struct OperatorPool {
    int n = 0;
    int k_max = 0;
    std::vector<PauliString> ops;

    static OperatorPool local(int n, int k);
    bool contains(const PauliString& p) const;
};

// Default per-qubit weight budget. Half, rather than the unit budget of the
// plain packing form, so that every returned Hamiltonian has
// lipschitz_ub <= 1 and basis-state estimates recover the Hamming distance.
inline constexpr double kDefaultBudget = 0.5;

struct LpSolution {
    std::vector<std::pair<PauliString, double>> w_star; // active operators, pool order
    std::vector<double> z_star;                         // per-qubit duals
    double value = 0.0;
    int n_active = 0;
};

// c_j = Tr[P_j (gen - target)] for every pool element; entries below 1e-12
// are clamped to zero.
std::vector<double> measure_coefficients(const QuantumState& gen, const QuantumState& target,
                                         const OperatorPool& pool);

// max sum_j c_j w_j subject to per-qubit budgets sum_{j: i in supp} |w_j| <=
// budget. Sign-folded to a packing LP and solved by revised simplex; the
// returned primal/dual pair is validated (feasibility, strong duality,
// n_active <= n).
LpSolution solve_lp(std::span<const double> c, const OperatorPool& pool, double budget);

struct EmEstimate {
    double value = 0.0;
    WeightedObservable h_max;
    LpSolution solution;
};

EmEstimate em_estimate(const QuantumState& gen, const QuantumState& target,
                       const OperatorPool& pool, double budget = kDefaultBudget);

// Replace every inactive operator with |c_j| below p_thresh * min active
// |c|* by a fresh uniformly random non-identity Pauli string not already in
// the pool. No-op when the solution has no active operator. Returns the
// number of replacements.
int cycle_operators(OperatorPool& pool, const LpSolution& solution, std::span<const double> c,
                    double p_thresh, Rng& rng);

// Exact optimal transport under Hamming cost between two distributions over
// {0,1}^n, n <= 4, via the transportation polytope.
double classical_em_hamming(std::span<const double> p, std::span<const double> q, int n);

} // namespace qem
