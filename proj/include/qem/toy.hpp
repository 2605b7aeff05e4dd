#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/pauli.hpp"
#include "qem/rng.hpp"

namespace qem {

// O(n) representation of the chain-circuit family: entry k holds the
// amplitude on |1_k 0_{n-k}>. Formula-convention angles throughout (half the
// physical gate angle).
struct CompactState {
    std::vector<cxd> amps; // length n + 1
    int n() const { return static_cast<int>(amps.size()) - 1; }
};

CompactState toy_state(std::span<const double> theta);

// Physical gate angles for toy_chain_circuit reproducing toy_state(theta).
std::vector<double> toy_gate_angles(std::span<const double> theta);

// Closed-form |<GHZ_n|psi(theta)>|^2 and its analytic gradient.
double toy_fidelity(std::span<const double> theta);
std::vector<double> toy_fidelity_grad(std::span<const double> theta);

// Ladder operators of the estimator: element k-1 acts on qubits 0..k-1 with
// X everywhere except the last, which is Y for odd k.
std::vector<PauliString> toy_ladder_ops(int n);

// Estimated EM distance to |GHZ_n>: max over the Z-sum candidate and the n
// ladder candidates, each normalized to lipschitz_ub <= 1 (divided by 2).
double toy_em_estimate(std::span<const double> theta);

// Subgradient of the estimate: the argmax candidate differentiated, with
// sign(0) = 0 inside absolute values.
std::vector<double> toy_em_gradient(std::span<const double> theta);

enum class ToyLoss { Fidelity, Em };

ToyLoss toy_loss_from_name(std::string_view name);

struct ToyTrialResult {
    bool success = false;
    int steps = 0;
    double final_fidelity = 0.0;
};

// One Adam run from theta ~ N(0,1) (or the supplied override); success means
// final fidelity above 0.98. max_steps <= 0 selects the per-loss default
// (100000 for fidelity, 10000 for EM).
ToyTrialResult run_toy_trial(int n, ToyLoss loss, double lr, int max_steps, Rng& rng,
                             const std::vector<double>* init_override = nullptr);

struct ToySuccessRow {
    int n = 0;
    ToyLoss loss = ToyLoss::Fidelity;
    int trials = 0;
    int successes = 0;
    double rate = 0.0;
    double mean_steps = 0.0;
};

std::vector<ToySuccessRow> toy_success_experiment(std::span<const int> n_list, int trials,
                                                  ToyLoss loss, double lr, std::uint64_t seed,
                                                  int jobs = 1, int max_steps = 0);

} // namespace qem
