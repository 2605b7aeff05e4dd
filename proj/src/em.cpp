#include "qem/em.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace qem {

OperatorPool OperatorPool::local(int n, int k) {
    OperatorPool pool;
    pool.n = n;
    pool.k_max = k;
    pool.ops = enumerate_local(n, k);
    return pool;
}

bool OperatorPool::contains(const PauliString& p) const {
    return std::find(ops.begin(), ops.end(), p) != ops.end();
}

std::vector<double> measure_coefficients(const QuantumState& gen, const QuantumState& target,
                                         const OperatorPool& pool) {
    if (gen.num_qubits() != pool.n || target.num_qubits() != pool.n) {
        throw std::invalid_argument("measure_coefficients: qubit count mismatch");
    }
    std::vector<double> c(pool.ops.size());
    for (std::size_t j = 0; j < pool.ops.size(); ++j) {
        double v = expectation(gen, pool.ops[j]) - expectation(target, pool.ops[j]);
        if (std::abs(v) < 1e-12) {
            v = 0.0;
        }
        c[j] = v;
    }
    return c;
}

LpSolution solve_lp(std::span<const double> c, const OperatorPool& pool, double budget) {
    if (c.size() != pool.ops.size()) {
        throw std::invalid_argument("solve_lp: coefficient count mismatch");
    }
    if (budget <= 0.0) {
        throw std::invalid_argument("solve_lp: budget must be positive");
    }
    const int n = pool.n;
    const int m = static_cast<int>(pool.ops.size());

    // Fold w_j = sign(c_j) u_j: maximize |c|^T u with the per-qubit
    // incidence constraints.
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    std::vector<double> obj(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        obj[static_cast<std::size_t>(j)] = std::abs(c[static_cast<std::size_t>(j)]);
        for (int i : pool.ops[static_cast<std::size_t>(j)].support()) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0;
        }
    }
    const std::vector<double> b(static_cast<std::size_t>(n), budget);
    const std::vector<RowType> rows(static_cast<std::size_t>(n), RowType::LessEq);
    const SimplexResult res = simplex_maximize(a, b, obj, rows);

    LpSolution sol;
    sol.value = res.objective;
    sol.z_star = res.dual;
    for (int j = 0; j < m; ++j) {
        const double u = res.x[static_cast<std::size_t>(j)];
        if (u > 1e-12 && c[static_cast<std::size_t>(j)] != 0.0) {
            const double w = (c[static_cast<std::size_t>(j)] > 0.0) ? u : -u;
            sol.w_star.emplace_back(pool.ops[static_cast<std::size_t>(j)], w);
        }
    }
    sol.n_active = static_cast<int>(sol.w_star.size());

    // Certificate checks; a violation means a solver defect, not bad input.
    if (sol.n_active > n) {
        throw numeric_error("solve_lp: more active operators than constraints");
    }
    std::vector<double> load(static_cast<std::size_t>(n), 0.0);
    for (const auto& [p, w] : sol.w_star) {
        for (int i : p.support()) {
            load[static_cast<std::size_t>(i)] += std::abs(w);
        }
    }
    double dual_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (load[static_cast<std::size_t>(i)] > budget + 1e-9) {
            throw numeric_error("solve_lp: primal infeasible");
        }
        if (sol.z_star[static_cast<std::size_t>(i)] < -1e-9) {
            throw numeric_error("solve_lp: negative dual");
        }
        dual_sum += sol.z_star[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < m; ++j) {
        double cover = 0.0;
        for (int i : pool.ops[static_cast<std::size_t>(j)].support()) {
            cover += sol.z_star[static_cast<std::size_t>(i)];
        }
        if (cover < std::abs(c[static_cast<std::size_t>(j)]) - 1e-9) {
            throw numeric_error("solve_lp: dual infeasible");
        }
    }
    if (std::abs(sol.value - budget * dual_sum) > 1e-8 * std::max(1.0, std::abs(sol.value))) {
        throw numeric_error("solve_lp: strong duality gap");
    }
    return sol;
}

EmEstimate em_estimate(const QuantumState& gen, const QuantumState& target,
                       const OperatorPool& pool, double budget) {
    const std::vector<double> c = measure_coefficients(gen, target, pool);
    EmEstimate est{0.0, WeightedObservable(pool.n), solve_lp(c, pool, budget)};
    est.value = est.solution.value;
    for (const auto& [p, w] : est.solution.w_star) {
        est.h_max.add(p, w);
    }
    return est;
}

int cycle_operators(OperatorPool& pool, const LpSolution& solution, std::span<const double> c,
                    double p_thresh, Rng& rng) {
    if (p_thresh <= 0.0 || p_thresh > 1.0) {
        throw std::invalid_argument("cycle_operators: threshold must be in (0, 1]");
    }
    if (solution.n_active == 0) {
        return 0;
    }
    if (c.size() != pool.ops.size()) {
        throw std::invalid_argument("cycle_operators: coefficient count mismatch");
    }
    std::unordered_set<PauliString, PauliStringHash> active;
    double min_active = std::numeric_limits<double>::infinity();
    for (const auto& [p, w] : solution.w_star) {
        (void)w;
        active.insert(p);
        const auto it = std::find(pool.ops.begin(), pool.ops.end(), p);
        if (it != pool.ops.end()) {
            const auto idx = static_cast<std::size_t>(it - pool.ops.begin());
            min_active = std::min(min_active, std::abs(c[idx]));
        }
    }
    const double threshold = p_thresh * min_active;

    std::unordered_set<PauliString, PauliStringHash> present(pool.ops.begin(), pool.ops.end());
    auto fresh_random = [&]() {
        while (true) {
            PauliString p(pool.n);
            for (int q = 0; q < pool.n; ++q) {
                p = p.with_letter(q, static_cast<Pauli>(rng.below(4)));
            }
            if (!p.is_identity() && !present.count(p)) {
                return p;
            }
        }
    };

    int replaced = 0;
    for (std::size_t j = 0; j < pool.ops.size(); ++j) {
        if (active.count(pool.ops[j])) {
            continue;
        }
        if (std::abs(c[j]) < threshold) {
            present.erase(pool.ops[j]);
            pool.ops[j] = fresh_random();
            present.insert(pool.ops[j]);
            ++replaced;
        }
    }
    return replaced;
}

double classical_em_hamming(std::span<const double> p, std::span<const double> q, int n) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("classical_em_hamming: n must be in [1, 4]");
    }
    const std::size_t size = std::size_t{1} << n;
    if (p.size() != size || q.size() != size) {
        throw std::invalid_argument("classical_em_hamming: distribution size mismatch");
    }
    double ps = 0.0;
    double qs = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        if (p[i] < -1e-12 || q[i] < -1e-12) {
            throw std::invalid_argument("classical_em_hamming: negative probability");
        }
        ps += p[i];
        qs += q[i];
    }
    if (std::abs(ps - 1.0) > 1e-9 || std::abs(qs - 1.0) > 1e-9) {
        throw std::invalid_argument("classical_em_hamming: distributions must sum to 1");
    }

    // min sum_{x,y} pi(x,y) h(x,y) over couplings; variables are the flat
    // pi entries, equality rows fix both marginals (one row is redundant).
    const int nvars = static_cast<int>(size * size);
    const int nrows = static_cast<int>(2 * size);
    std::vector<std::vector<double>> a(static_cast<std::size_t>(nrows),
                                       std::vector<double>(static_cast<std::size_t>(nvars), 0.0));
    std::vector<double> b(static_cast<std::size_t>(nrows));
    std::vector<double> cost(static_cast<std::size_t>(nvars));
    for (std::size_t x = 0; x < size; ++x) {
        b[x] = p[x];
        b[size + x] = q[x];
        for (std::size_t y = 0; y < size; ++y) {
            const std::size_t var = x * size + y;
            a[x][var] = 1.0;
            a[size + y][var] = 1.0;
            cost[var] = -static_cast<double>(std::popcount(x ^ y));
        }
    }
    const std::vector<RowType> rows(static_cast<std::size_t>(nrows), RowType::Eq);
    const SimplexResult res = simplex_maximize(a, b, cost, rows);
    return -res.objective;
}

} // namespace qem
