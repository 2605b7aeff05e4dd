#include "qem/gan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace qem {

std::vector<double> GeneratorModel::probabilities() const {
    double max_logit = -std::numeric_limits<double>::infinity();
    for (double l : logits) {
        max_logit = std::max(max_logit, l);
    }
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - max_logit);
        total += p[i];
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

GeneratorModel GeneratorModel::make(const Circuit& architecture, int r, Rng& rng) {
    if (r < 1) {
        throw std::invalid_argument("GeneratorModel: rank must be >= 1");
    }
    GeneratorModel model;
    model.circuits.assign(static_cast<std::size_t>(r), architecture);
    model.thetas.resize(static_cast<std::size_t>(r));
    for (auto& theta : model.thetas) {
        theta.resize(static_cast<std::size_t>(architecture.param_count));
        for (double& t : theta) {
            t = rng.normal();
        }
    }
    model.logits.assign(static_cast<std::size_t>(r), 0.0);
    return model;
}

QuantumState generator_state(const GeneratorModel& model) {
    const std::vector<double> p = model.probabilities();
    std::vector<QuantumState::Branch> branches;
    branches.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        branches.push_back({p[i], run_circuit_amps(model.circuits[i], model.thetas[i])});
    }
    return QuantumState::mixture(std::move(branches));
}

LossGrads loss_and_grads(const GeneratorModel& model, const WeightedObservable& h_max,
                         GradBackend backend) {
    const std::vector<double> p = model.probabilities();
    const int r = model.rank();
    LossGrads out;
    out.g_theta.resize(static_cast<std::size_t>(r));
    std::vector<double> branch_e(static_cast<std::size_t>(r), 0.0);
    for (int i = 0; i < r; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Amplitudes amps = run_circuit_amps(model.circuits[idx], model.thetas[idx]);
        double e = 0.0;
        for (const auto& [ps, w] : h_max.terms()) {
            e += w * expectation(std::span<const cxd>(amps), ps);
        }
        branch_e[idx] = e;
        out.loss += p[idx] * e;
        out.g_theta[idx] =
            expectation_gradient(model.circuits[idx], model.thetas[idx], h_max, backend);
        for (double& g : out.g_theta[idx]) {
            g *= p[idx];
        }
    }
    // Softmax chain rule over the branch expectations.
    out.g_logits.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out.g_logits[idx] = p[idx] * (branch_e[idx] - out.loss);
    }
    return out;
}

namespace {

class TargetExpectationCache {
  public:
    explicit TargetExpectationCache(const QuantumState& target) : target_(target) {}

    double get(const PauliString& p) {
        auto it = cache_.find(p);
        if (it != cache_.end()) {
            return it->second;
        }
        const double v = expectation(target_, p);
        cache_.emplace(p, v);
        return v;
    }

  private:
    const QuantumState& target_;
    std::unordered_map<PauliString, double, PauliStringHash> cache_;
};

} // namespace

TrainHistory train(GeneratorModel& model, const QuantumState& target, const TrainConfig& config) {
    if (model.num_qubits() != target.num_qubits()) {
        throw std::invalid_argument("train: model and target qubit counts differ");
    }
    const int n = model.num_qubits();
    Rng rng(config.seed);

    OperatorPool pool = OperatorPool::local(n, config.pool_k);
    if (config.pool_size > 0 && config.pool_size < static_cast<int>(pool.ops.size())) {
        // Seeded uniform subsample, preserving enumeration order.
        std::vector<PauliString> chosen;
        std::vector<PauliString> remaining = pool.ops;
        for (int i = 0; i < config.pool_size; ++i) {
            const std::size_t pick = rng.below(remaining.size());
            chosen.push_back(remaining[pick]);
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        std::sort(chosen.begin(), chosen.end());
        pool.ops = std::move(chosen);
    }

    TargetExpectationCache target_cache(target);

    // Flat parameter vector: thetas of every branch, then logits.
    const int per_branch = model.circuits.front().param_count;
    const int r = model.rank();
    const std::size_t total = static_cast<std::size_t>(per_branch) * r + static_cast<std::size_t>(r);
    std::vector<double> flat_grads(total, 0.0);
    AdamState adam;
    adam.beta1 = config.beta1;
    adam.beta2 = config.beta2;
    adam.eps = config.adam_eps;

    TrainHistory history;
    int quiet_steps = 0;
    const auto t0 = std::chrono::steady_clock::now();

    for (int step = 0; step < config.max_steps; ++step) {
        // Discriminator: coefficients (target side cached) and the LP.
        const QuantumState gen = generator_state(model);
        std::vector<double> c(pool.ops.size());
        for (std::size_t j = 0; j < pool.ops.size(); ++j) {
            double v = expectation(gen, pool.ops[j]) - target_cache.get(pool.ops[j]);
            if (std::abs(v) < 1e-12) {
                v = 0.0;
            }
            c[j] = v;
        }
        LpSolution lp = solve_lp(c, pool, config.budget);
        WeightedObservable h_max(n);
        for (const auto& [p, w] : lp.w_star) {
            h_max.add(p, w);
        }

        if (config.cycling && step > 0 && step % config.cycle_period == 0) {
            cycle_operators(pool, lp, c, config.cycle_thresh, rng);
        }

        // Generator update against the frozen h_max.
        const LossGrads grads = loss_and_grads(model, h_max, config.backend);
        if (!std::isfinite(grads.loss) || !std::isfinite(lp.value)) {
            history.aborted = true;
            break;
        }

        double grad_l1 = 0.0;
        std::size_t cursor = 0;
        for (int i = 0; i < r; ++i) {
            for (double g : grads.g_theta[static_cast<std::size_t>(i)]) {
                flat_grads[cursor++] = g;
                grad_l1 += std::abs(g);
            }
        }
        for (double g : grads.g_logits) {
            flat_grads[cursor++] = g;
            grad_l1 += std::abs(g);
        }

        StepRecord rec;
        rec.step = step;
        rec.em_value = lp.value;
        rec.fidelity = fidelity(gen, target);
        rec.trace_distance = (config.track_trace_distance && n <= 10)
                                 ? trace_distance(gen, target)
                                 : std::numeric_limits<double>::quiet_NaN();
        rec.n_active = lp.n_active;
        rec.grad_l1 = grad_l1;
        rec.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        history.steps.push_back(rec);

        if (lp.value < 1e-12) {
            history.converged = true;
            break;
        }

        const double lr = (config.lr2 > 0.0 && config.lr_switch >= 0 && step >= config.lr_switch)
                              ? config.lr2
                              : config.lr;
        std::vector<double> flat_params(total);
        cursor = 0;
        for (int i = 0; i < r; ++i) {
            for (double t : model.thetas[static_cast<std::size_t>(i)]) {
                flat_params[cursor++] = t;
            }
        }
        for (double l : model.logits) {
            flat_params[cursor++] = l;
        }
        const std::vector<double> before = flat_params;
        adam_step(flat_params, flat_grads, adam, lr);

        double max_change = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            max_change = std::max(max_change, std::abs(flat_params[i] - before[i]));
        }
        cursor = 0;
        for (int i = 0; i < r; ++i) {
            for (double& t : model.thetas[static_cast<std::size_t>(i)]) {
                t = flat_params[cursor++];
            }
        }
        for (double& l : model.logits) {
            l = flat_params[cursor++];
        }

        if (max_change < config.tol) {
            if (++quiet_steps >= config.tol_window) {
                history.converged = true;
                break;
            }
        } else {
            quiet_steps = 0;
        }
    }

    history.pool_final_size = static_cast<int>(pool.ops.size());
    return history;
}

} // namespace qem
