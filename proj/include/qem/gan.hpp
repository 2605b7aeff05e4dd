#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qem/adam.hpp"
#include "qem/em.hpp"
#include "qem/gradients.hpp"

namespace qem {

// Mixture-of-circuits generator: r branches sharing one architecture, each
// with its own parameter vector; branch probabilities p_i = softmax(logits).
struct GeneratorModel {
    std::vector<Circuit> circuits;
    std::vector<std::vector<double>> thetas;
    std::vector<double> logits;

    int rank() const { return static_cast<int>(circuits.size()); }
    int num_qubits() const { return circuits.empty() ? 0 : circuits.front().n; }
    std::vector<double> probabilities() const;

    static GeneratorModel make(const Circuit& architecture, int r, Rng& rng);
};

QuantumState generator_state(const GeneratorModel& model);

struct LossGrads {
    double loss = 0.0;                        // Tr[G(theta) h_max]
    std::vector<std::vector<double>> g_theta; // per branch, scaled by p_i
    std::vector<double> g_logits;
};

LossGrads loss_and_grads(const GeneratorModel& model, const WeightedObservable& h_max,
                         GradBackend backend = GradBackend::Adjoint);

struct TrainConfig {
    int pool_k = 2;
    int pool_size = 0; // 0 = full k-local enumeration
    double budget = kDefaultBudget;
    double lr = 0.01;
    double lr2 = -1.0;   // second-phase rate, < 0 disables
    int lr_switch = -1;  // step at which lr2 takes over
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    int max_steps = 1000;
    double tol = 1e-6;          // parameter-change tolerance
    int tol_window = 10;        // consecutive quiet steps before stopping
    bool cycling = false;
    int cycle_period = 10;
    double cycle_thresh = 0.8;
    std::uint64_t seed = 0;
    GradBackend backend = GradBackend::Adjoint;
    bool track_trace_distance = true;
};

struct StepRecord {
    int step = 0;
    double em_value = 0.0;
    double fidelity = 0.0;
    double trace_distance = 0.0; // NaN when not computed
    int n_active = 0;
    double grad_l1 = 0.0;
    double elapsed_ms = 0.0;
};

struct TrainHistory {
    std::vector<StepRecord> steps;
    bool converged = false;
    bool aborted = false; // non-finite loss
    int pool_final_size = 0;
};

// Alternating optimization: measure coefficients, solve the discriminator
// LP, optionally cycle the pool, then Adam-update the generator against the
// frozen h_max. Deterministic for a fixed config + seed (wall times aside).
TrainHistory train(GeneratorModel& model, const QuantumState& target, const TrainConfig& config);

} // namespace qem
