#include "qem/toy.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qem/adam.hpp"

namespace qem {

namespace {

constexpr cxd kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// eta_k = Re[(k odd ? -i : 1) i^k], the real phase in front of the ladder
// matrix element <0_n| L_k |1_k 0>.
double ladder_eta(int k) { return ((k / 2) % 2 == 0) ? 1.0 : -1.0; }

} // namespace

CompactState toy_state(std::span<const double> theta) {
    const int n = static_cast<int>(theta.size());
    if (n < 1) {
        throw std::invalid_argument("toy_state: need at least one angle");
    }
    CompactState st;
    st.amps.resize(static_cast<std::size_t>(n) + 1);
    st.amps[0] = std::cos(theta[0]);
    double sin_prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        sin_prod *= std::sin(theta[static_cast<std::size_t>(k - 1)]);
        const double tail = (k < n) ? std::cos(theta[static_cast<std::size_t>(k)]) : 1.0;
        st.amps[static_cast<std::size_t>(k)] = kIPow[k & 3] * (sin_prod * tail);
    }
    return st;
}

std::vector<double> toy_gate_angles(std::span<const double> theta) {
    std::vector<double> gates(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        gates[i] = -2.0 * theta[i];
    }
    return gates;
}

double toy_fidelity(std::span<const double> theta) {
    double sin_prod = 1.0;
    for (double t : theta) {
        sin_prod *= std::sin(t);
    }
    const double amp = (std::cos(theta[0]) + sin_prod) / std::sqrt(2.0);
    return amp * amp;
}

std::vector<double> toy_fidelity_grad(std::span<const double> theta) {
    const int n = static_cast<int>(theta.size());
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);

    // prefix[i] = prod_{j < i} sin(theta_j), suffix[i] = prod_{j > i}.
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
    for (int i = 0; i < n; ++i) {
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] * std::sin(theta[static_cast<std::size_t>(i)]);
    }
    for (int i = n - 1; i >= 0; --i) {
        suffix[static_cast<std::size_t>(i)] =
            suffix[static_cast<std::size_t>(i) + 1] * std::sin(theta[static_cast<std::size_t>(i)]);
    }
    const double t1 = theta[0];
    const double rest = suffix[1]; // prod_{k >= 2} sin(theta_k)
    const double full = prefix[static_cast<std::size_t>(n)];
    grad[0] = -std::cos(t1) * std::sin(t1) + std::cos(2.0 * t1) * rest +
              std::sin(t1) * std::cos(t1) * rest * rest;
    for (int i = 1; i < n; ++i) {
        const double others =
            prefix[static_cast<std::size_t>(i)] * suffix[static_cast<std::size_t>(i) + 1];
        grad[static_cast<std::size_t>(i)] = std::cos(theta[static_cast<std::size_t>(i)]) * others *
                                            (std::cos(t1) + full);
    }
    return grad;
}

std::vector<PauliString> toy_ladder_ops(int n) {
    std::vector<PauliString> ops;
    ops.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        PauliString p(n);
        for (int q = 0; q + 1 < k; ++q) {
            p = p.with_letter(q, Pauli::X);
        }
        p = p.with_letter(k - 1, (k % 2 == 1) ? Pauli::Y : Pauli::X);
        ops.push_back(p);
    }
    return ops;
}

namespace {

struct ToyCandidates {
    std::vector<double> z_exp;      // E[Z_j], j = 1..n
    std::vector<double> ladder_exp; // E[L_k], k = 1..n
    double z_sum = 0.0;             // candidate 0, already /2
    std::vector<double> ladder_val; // |E[L_k]|/2
    int argmax = 0;                 // 0 = z-sum, k = ladder k
    double best = 0.0;
};

ToyCandidates toy_candidates(std::span<const double> theta) {
    const int n = static_cast<int>(theta.size());
    const CompactState st = toy_state(theta);

    ToyCandidates cand;
    cand.z_exp.resize(static_cast<std::size_t>(n));
    // Qubit j is |1> exactly on compact components k >= j.
    double tail = 0.0;
    for (int j = n; j >= 1; --j) {
        tail += std::norm(st.amps[static_cast<std::size_t>(j)]);
        cand.z_exp[static_cast<std::size_t>(j - 1)] = 1.0 - 2.0 * tail;
    }
    for (double e : cand.z_exp) {
        cand.z_sum += std::abs(e);
    }
    cand.z_sum /= 2.0;

    cand.ladder_exp.resize(static_cast<std::size_t>(n));
    cand.ladder_val.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const cxd mk = (k % 2 == 1) ? cxd{0, -1} : cxd{1, 0};
        double e = 2.0 * (std::conj(st.amps[0]) * mk * st.amps[static_cast<std::size_t>(k)]).real();
        if (k == n && n % 2 == 0) {
            e -= 1.0; // <GHZ| X..X |GHZ> for even n
        }
        cand.ladder_exp[static_cast<std::size_t>(k - 1)] = e;
        cand.ladder_val[static_cast<std::size_t>(k - 1)] = std::abs(e) / 2.0;
    }

    cand.best = cand.z_sum;
    cand.argmax = 0;
    for (int k = 1; k <= n; ++k) {
        if (cand.ladder_val[static_cast<std::size_t>(k - 1)] > cand.best + 1e-15) {
            cand.best = cand.ladder_val[static_cast<std::size_t>(k - 1)];
            cand.argmax = k;
        }
    }
    return cand;
}

} // namespace

double toy_em_estimate(std::span<const double> theta) {
    return toy_candidates(theta).best;
}

std::vector<double> toy_em_gradient(std::span<const double> theta) {
    const int n = static_cast<int>(theta.size());
    const ToyCandidates cand = toy_candidates(theta);
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);

    std::vector<double> s(static_cast<std::size_t>(n));
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = std::sin(theta[static_cast<std::size_t>(i)]);
        c[static_cast<std::size_t>(i)] = std::cos(theta[static_cast<std::size_t>(i)]);
    }

    if (cand.argmax == 0) {
        // d/dtheta of sum_j |1 - 2 S_j| / 2 with S_j the suffix probability
        // sums; rho_k = |amps_k|^2 enters S_j for every j <= k, so weight
        // rho_k by the running sum of signs.
        std::vector<double> sign_prefix(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 1; j <= n; ++j) {
            sign_prefix[static_cast<std::size_t>(j)] =
                sign_prefix[static_cast<std::size_t>(j - 1)] +
                sign_of(cand.z_exp[static_cast<std::size_t>(j - 1)]);
        }
        // rho_k = (prod_{j<=k} sin^2 theta_j) * cos^2 theta_{k+1} (tail 1 at
        // k = n); forward/backward partial products keep each k at O(n)
        // without dividing by possibly-zero sines.
        std::vector<double> s2(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            s2[static_cast<std::size_t>(i)] =
                s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
        }
        std::vector<double> fw(static_cast<std::size_t>(n) + 1, 1.0);
        std::vector<double> bw(static_cast<std::size_t>(n) + 2, 1.0);
        for (int k = 1; k <= n; ++k) {
            const double weight = sign_prefix[static_cast<std::size_t>(k)];
            if (weight == 0.0) {
                continue;
            }
            const double tail_cos = (k < n) ? c[static_cast<std::size_t>(k)] : 1.0;
            const double tail2 = tail_cos * tail_cos;
            for (int j = 1; j <= k; ++j) {
                fw[static_cast<std::size_t>(j)] =
                    fw[static_cast<std::size_t>(j - 1)] * s2[static_cast<std::size_t>(j - 1)];
            }
            bw[static_cast<std::size_t>(k) + 1] = 1.0;
            for (int j = k; j >= 1; --j) {
                bw[static_cast<std::size_t>(j)] =
                    bw[static_cast<std::size_t>(j) + 1] * s2[static_cast<std::size_t>(j - 1)];
            }
            for (int m = 1; m <= k; ++m) {
                const double d = fw[static_cast<std::size_t>(m - 1)] *
                                 bw[static_cast<std::size_t>(m) + 1] * 2.0 *
                                 s[static_cast<std::size_t>(m - 1)] *
                                 c[static_cast<std::size_t>(m - 1)] * tail2;
                grad[static_cast<std::size_t>(m - 1)] += -weight * d;
            }
            if (k < n) {
                const double d = fw[static_cast<std::size_t>(k)] * -2.0 * tail_cos *
                                 s[static_cast<std::size_t>(k)];
                grad[static_cast<std::size_t>(k)] += -weight * d;
            }
        }
    } else {
        const int k = cand.argmax;
        const double e = cand.ladder_exp[static_cast<std::size_t>(k - 1)];
        const double sg = sign_of(e);
        if (sg != 0.0) {
            // E[L_k] = 2 eta_k cos(theta_1) (prod_{j<=k} sin) cos(theta_{k+1}) - const
            const double eta = ladder_eta(k);
            const double tail_cos = (k < n) ? c[static_cast<std::size_t>(k)] : 1.0;
            for (int m = 1; m <= std::min(k + 1, n); ++m) {
                double d;
                if (m == 1) {
                    // d/dtheta_1 [cos sin ...] = cos(2 theta_1) * rest
                    d = std::cos(2.0 * theta[0]);
                    for (int j = 2; j <= k; ++j) {
                        d *= s[static_cast<std::size_t>(j - 1)];
                    }
                    d *= tail_cos;
                } else if (m <= k) {
                    d = c[0];
                    for (int j = 1; j <= k; ++j) {
                        d *= (j == m) ? c[static_cast<std::size_t>(j - 1)]
                                      : s[static_cast<std::size_t>(j - 1)];
                    }
                    d *= tail_cos;
                } else { // m == k + 1
                    d = c[0];
                    for (int j = 1; j <= k; ++j) {
                        d *= s[static_cast<std::size_t>(j - 1)];
                    }
                    d *= -s[static_cast<std::size_t>(k)];
                }
                grad[static_cast<std::size_t>(m - 1)] += sg * eta * d;
            }
        }
    }
    return grad;
}

ToyLoss toy_loss_from_name(std::string_view name) {
    if (name == "fidelity") return ToyLoss::Fidelity;
    if (name == "em") return ToyLoss::Em;
    throw std::invalid_argument("unknown toy loss '" + std::string(name) + "'");
}

ToyTrialResult run_toy_trial(int n, ToyLoss loss, double lr, int max_steps, Rng& rng,
                             const std::vector<double>* init_override) {
    if (max_steps <= 0) {
        max_steps = (loss == ToyLoss::Fidelity) ? 100000 : 10000;
    }
    std::vector<double> theta(static_cast<std::size_t>(n));
    if (init_override) {
        theta = *init_override;
    } else {
        for (double& t : theta) {
            t = rng.normal();
        }
    }

    AdamState adam;
    std::vector<double> grad(static_cast<std::size_t>(n));
    int streak = 0;
    int step = 0;
    for (; step < max_steps; ++step) {
        if (loss == ToyLoss::Fidelity) {
            const std::vector<double> g = toy_fidelity_grad(theta);
            for (std::size_t i = 0; i < grad.size(); ++i) {
                grad[i] = -g[i]; // minimize 1 - F
            }
        } else {
            grad = toy_em_gradient(theta);
            if (toy_em_estimate(theta) < 1e-9) {
                break;
            }
        }
        // Early exit once the run is decisively converged.
        if (toy_fidelity(theta) > 0.98) {
            if (++streak >= 10) {
                break;
            }
        } else {
            streak = 0;
        }
        adam_step(theta, grad, adam, lr);
    }

    ToyTrialResult result;
    result.final_fidelity = toy_fidelity(theta);
    result.success = result.final_fidelity > 0.98;
    result.steps = step;
    return result;
}

std::vector<ToySuccessRow> toy_success_experiment(std::span<const int> n_list, int trials,
                                                  ToyLoss loss, double lr, std::uint64_t seed,
                                                  int jobs, int max_steps) {
    if (trials < 1) {
        throw std::invalid_argument("toy_success_experiment: trials must be >= 1");
    }
    std::vector<ToySuccessRow> rows;
    for (int n : n_list) {
        std::vector<ToyTrialResult> results(static_cast<std::size_t>(trials));
        std::atomic<int> next{0};
        auto worker = [&] {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= trials) {
                    return;
                }
                Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(t));
                results[static_cast<std::size_t>(t)] =
                    run_toy_trial(n, loss, lr, max_steps, rng);
            }
        };
        const int nthreads = std::max(1, std::min(jobs, trials));
        std::vector<std::thread> threads;
        for (int i = 0; i < nthreads - 1; ++i) {
            threads.emplace_back(worker);
        }
        worker();
        for (auto& th : threads) {
            th.join();
        }

        ToySuccessRow row;
        row.n = n;
        row.loss = loss;
        row.trials = trials;
        double steps_sum = 0.0;
        for (const auto& r : results) {
            row.successes += r.success ? 1 : 0;
            steps_sum += r.steps;
        }
        row.rate = static_cast<double>(row.successes) / trials;
        row.mean_steps = steps_sum / trials;
        rows.push_back(row);
    }
    return rows;
}

} // namespace qem
