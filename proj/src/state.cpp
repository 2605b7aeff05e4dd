#include "qem/state.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qem {

namespace {

int qubits_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("state dimension must be a power of two");
    }
    return std::countr_zero(dim);
}

} // namespace

double norm2(std::span<const cxd> amps) {
    double s = 0.0;
    for (const cxd& v : amps) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

cxd inner_product(std::span<const cxd> a, std::span<const cxd> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

QuantumState QuantumState::pure(Amplitudes amps) {
    QuantumState st;
    st.n_ = qubits_for_dim(amps.size());
    if (std::abs(norm2(amps) - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
    st.rep_ = std::move(amps);
    return st;
}

QuantumState QuantumState::mixture(std::vector<Branch> branches) {
    if (branches.empty()) {
        throw std::invalid_argument("mixture needs at least one branch");
    }
    QuantumState st;
    st.n_ = qubits_for_dim(branches.front().amps.size());
    double total = 0.0;
    for (const Branch& b : branches) {
        if (qubits_for_dim(b.amps.size()) != st.n_) {
            throw std::invalid_argument("mixture branches disagree on qubit count");
        }
        if (b.prob < 0.0) {
            throw std::invalid_argument("mixture probability is negative");
        }
        if (std::abs(norm2(b.amps) - 1.0) > 1e-10) {
            throw std::invalid_argument("mixture branch is not normalized");
        }
        total += b.prob;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("mixture probabilities do not sum to 1");
    }
    st.rep_ = std::move(branches);
    return st;
}

QuantumState QuantumState::dense(Matrix rho) {
    QuantumState st;
    st.n_ = qubits_for_dim(static_cast<std::size_t>(rho.dim));
    if (!is_hermitian(rho, 1e-10)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(trace_real(rho) - 1.0) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    st.rep_ = std::move(rho);
    return st;
}

QuantumState QuantumState::basis(int n, std::uint64_t bits) {
    Amplitudes amps(std::size_t{1} << n, cxd{0.0});
    amps[bits] = 1.0;
    return pure(std::move(amps));
}

QuantumState QuantumState::ghz(int n) {
    Amplitudes amps(std::size_t{1} << n, cxd{0.0});
    const double r = 1.0 / std::sqrt(2.0);
    amps.front() = r;
    amps.back() = r;
    return pure(std::move(amps));
}

const Amplitudes& QuantumState::amplitudes() const {
    if (!is_pure()) {
        throw std::invalid_argument("state is not pure");
    }
    return std::get<Amplitudes>(rep_);
}

const std::vector<QuantumState::Branch>& QuantumState::branches() const {
    if (!is_mixture()) {
        throw std::invalid_argument("state is not a mixture");
    }
    return std::get<std::vector<Branch>>(rep_);
}

const Matrix& QuantumState::density() const {
    if (!is_dense()) {
        throw std::invalid_argument("state is not dense");
    }
    return std::get<Matrix>(rep_);
}

Matrix QuantumState::to_density() const {
    if (is_dense()) {
        return density();
    }
    if (n_ > 10) {
        throw std::invalid_argument("densify is limited to 10 qubits");
    }
    const int d = static_cast<int>(dim());
    Matrix rho(d);
    auto accumulate = [&](double prob, const Amplitudes& amps) {
        for (int r = 0; r < d; ++r) {
            if (amps[static_cast<std::size_t>(r)] == cxd{}) {
                continue;
            }
            for (int c = 0; c < d; ++c) {
                rho.at(r, c) += prob * amps[static_cast<std::size_t>(r)] *
                                std::conj(amps[static_cast<std::size_t>(c)]);
            }
        }
    };
    if (is_pure()) {
        accumulate(1.0, amplitudes());
    } else {
        for (const Branch& b : branches()) {
            accumulate(b.prob, b.amps);
        }
    }
    return rho;
}

Amplitudes apply_pauli(std::span<const cxd> amps, const PauliString& p) {
    if (amps.size() != (std::size_t{1} << p.num_qubits())) {
        throw std::invalid_argument("apply_pauli: dimension mismatch");
    }
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t ym = p.y_mask();
    const std::uint64_t zm = p.z_mask();
    const int ny = std::popcount(ym);
    // Global i^ny phase from the Y letters.
    static constexpr cxd kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cxd base = kIPow[ny & 3];

    Amplitudes out(amps.size());
    const std::uint64_t sign_mask = ym | zm;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const bool neg = std::popcount(b & sign_mask) & 1;
        out[b ^ xm] = (neg ? -base : base) * amps[b];
    }
    return out;
}

Amplitudes apply_observable(std::span<const cxd> amps, const WeightedObservable& h) {
    Amplitudes out(amps.size(), cxd{0.0});
    for (const auto& [p, w] : h.terms()) {
        const Amplitudes term = apply_pauli(amps, p);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += w * term[i];
        }
    }
    return out;
}

double expectation(std::span<const cxd> amps, const PauliString& p) {
    const Amplitudes scratch = apply_pauli(amps, p);
    const cxd v = inner_product(amps, scratch);
    assert(std::abs(v.imag()) < 1e-12);
    return v.real();
}

double expectation(const QuantumState& state, const PauliString& p) {
    if (state.num_qubits() != p.num_qubits()) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    if (state.is_pure()) {
        return expectation(std::span<const cxd>(state.amplitudes()), p);
    }
    if (state.is_mixture()) {
        double total = 0.0;
        for (const auto& b : state.branches()) {
            total += b.prob * expectation(std::span<const cxd>(b.amps), p);
        }
        return total;
    }
    // Tr[rho P]: P[b', b] = phase(b) for b' = b ^ xmask.
    const Matrix& rho = state.density();
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t sign_mask = p.y_mask() | p.z_mask();
    static constexpr cxd kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cxd base = kIPow[std::popcount(p.y_mask()) & 3];
    cxd total = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        const bool neg = std::popcount(b & sign_mask) & 1;
        total += rho.at(static_cast<int>(b), static_cast<int>(b ^ xm)) * (neg ? -base : base);
    }
    assert(std::abs(total.imag()) < 1e-9);
    return total.real();
}

double expectation(const QuantumState& state, const WeightedObservable& h) {
    double total = 0.0;
    for (const auto& [p, w] : h.terms()) {
        total += w * expectation(state, p);
    }
    return total;
}

namespace {

// (||sqrt(rho) sqrt(sigma)||_1)^2 via eigendecompositions.
double fidelity_dense(const Matrix& rho, const Matrix& sigma) {
    const EigResult er = hermitian_eig(rho);
    const int d = rho.dim;
    Matrix sqrt_rho(d);
    for (int k = 0; k < d; ++k) {
        const double lam = std::max(er.values[static_cast<std::size_t>(k)], 0.0);
        const double root = std::sqrt(lam);
        if (root == 0.0) {
            continue;
        }
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                sqrt_rho.at(r, c) += root * er.vectors.at(r, k) * std::conj(er.vectors.at(c, k));
            }
        }
    }
    const Matrix m = sqrt_rho * sigma * sqrt_rho;
    const EigResult em = hermitian_eig(m);
    double sum = 0.0;
    for (double lam : em.values) {
        sum += std::sqrt(std::max(lam, 0.0));
    }
    return sum * sum;
}

double overlap_with_density(const Amplitudes& psi, const QuantumState& other) {
    // <psi| rho |psi> without densifying mixtures.
    if (other.is_pure()) {
        return std::norm(inner_product(psi, other.amplitudes()));
    }
    if (other.is_mixture()) {
        double total = 0.0;
        for (const auto& b : other.branches()) {
            total += b.prob * std::norm(inner_product(psi, b.amps));
        }
        return total;
    }
    const Matrix& rho = other.density();
    cxd total = 0.0;
    for (int r = 0; r < rho.dim; ++r) {
        for (int c = 0; c < rho.dim; ++c) {
            total += std::conj(psi[static_cast<std::size_t>(r)]) * rho.at(r, c) *
                     psi[static_cast<std::size_t>(c)];
        }
    }
    return total.real();
}

} // namespace

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity: qubit count mismatch");
    }
    if (a.is_pure()) {
        return std::clamp(overlap_with_density(a.amplitudes(), b), 0.0, 1.0);
    }
    if (b.is_pure()) {
        return std::clamp(overlap_with_density(b.amplitudes(), a), 0.0, 1.0);
    }
    if (a.num_qubits() > 10) {
        throw std::invalid_argument("mixed-state fidelity is limited to 10 qubits");
    }
    return std::clamp(fidelity_dense(a.to_density(), b.to_density()), 0.0, 1.0);
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("trace_distance: qubit count mismatch");
    }
    if (a.is_pure() && b.is_pure()) {
        const double f = std::norm(inner_product(a.amplitudes(), b.amplitudes()));
        return std::sqrt(std::max(0.0, 1.0 - f));
    }
    if (a.num_qubits() > 10) {
        throw std::invalid_argument("mixed-state trace distance is limited to 10 qubits");
    }
    const Matrix diff = a.to_density() - b.to_density();
    const EigResult er = hermitian_eig(diff);
    double sum = 0.0;
    for (double lam : er.values) {
        sum += std::abs(lam);
    }
    return 0.5 * sum;
}

} // namespace qem
