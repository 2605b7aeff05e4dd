#pragma once

#include <span>
#include <vector>

#include "qem/circuit.hpp"

namespace qem {

enum class GradBackend { Adjoint, Shift, FiniteDiff };

GradBackend grad_backend_from_name(std::string_view name);
std::string_view grad_backend_name(GradBackend b);

// d<psi(theta)|H|psi(theta)>/dtheta for every slot: one forward pass plus one
// reverse sweep over the gates.
std::vector<double> adjoint_gradient(const Circuit& c, std::span<const double> params,
                                     const WeightedObservable& h);

// Same sweep for the overlap loss |<target|psi(theta)>|^2.
std::vector<double> overlap_gradient(const Circuit& c, std::span<const double> params,
                                     std::span<const cxd> target);

// Exact two-point rule for slots whose gates all have a single-Pauli-string
// generator (RX/RY/RZ/RZZ). Throws for CRX/CPhase slots.
double parameter_shift_gradient(const Circuit& c, std::span<const double> params,
                                const WeightedObservable& h, int slot);

std::vector<double> finite_diff_gradient(const Circuit& c, std::span<const double> params,
                                         const WeightedObservable& h, double step = 1e-5);

// Dispatch by backend; Shift falls back to the adjoint path on slots it
// cannot handle.
std::vector<double> expectation_gradient(const Circuit& c, std::span<const double> params,
                                         const WeightedObservable& h, GradBackend backend);

} // namespace qem
