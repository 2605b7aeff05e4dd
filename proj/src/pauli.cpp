#include "qem/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qem {

char pauli_char(Pauli p) {
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
    }
}

PauliString::PauliString(int n) {
    if (n < 0 || n > kMaxQubits) {
        throw std::invalid_argument("PauliString: qubit count out of range");
    }
    n_ = static_cast<std::uint8_t>(n);
}

PauliString PauliString::from_label(std::string_view label) {
    PauliString p(static_cast<int>(label.size()));
    for (std::size_t i = 0; i < label.size(); ++i) {
        p = p.with_letter(static_cast<int>(i), pauli_from_char(label[i]));
    }
    return p;
}

PauliString PauliString::single(int n, int qubit, Pauli p) {
    return PauliString(n).with_letter(qubit, p);
}

Pauli PauliString::letter(int qubit) const {
    if (qubit < 0 || qubit >= n_) {
        throw std::invalid_argument("PauliString::letter: qubit out of range");
    }
    return static_cast<Pauli>((code_ >> (2 * qubit)) & 3u);
}

PauliString PauliString::with_letter(int qubit, Pauli p) const {
    if (qubit < 0 || qubit >= n_) {
        throw std::invalid_argument("PauliString::with_letter: qubit out of range");
    }
    PauliString out = *this;
    out.code_ &= ~(std::uint64_t{3} << (2 * qubit));
    out.code_ |= static_cast<std::uint64_t>(p) << (2 * qubit);
    return out;
}

int PauliString::locality() const {
    int count = 0;
    for (int i = 0; i < n_; ++i) {
        if (((code_ >> (2 * i)) & 3u) != 0) {
            ++count;
        }
    }
    return count;
}

std::vector<int> PauliString::support() const {
    std::vector<int> s;
    for (int i = 0; i < n_; ++i) {
        if (((code_ >> (2 * i)) & 3u) != 0) {
            s.push_back(i);
        }
    }
    return s;
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < n_; ++i) {
        const auto l = static_cast<Pauli>((code_ >> (2 * i)) & 3u);
        if (l == Pauli::X || l == Pauli::Y) {
            m |= std::uint64_t{1} << i;
        }
    }
    return m;
}

std::uint64_t PauliString::y_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < n_; ++i) {
        if (static_cast<Pauli>((code_ >> (2 * i)) & 3u) == Pauli::Y) {
            m |= std::uint64_t{1} << i;
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < n_; ++i) {
        if (static_cast<Pauli>((code_ >> (2 * i)) & 3u) == Pauli::Z) {
            m |= std::uint64_t{1} << i;
        }
    }
    return m;
}

std::string PauliString::label() const {
    std::string s(n_, 'I');
    for (int i = 0; i < n_; ++i) {
        s[static_cast<std::size_t>(i)] = pauli_char(letter(i));
    }
    return s;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) {
        return a.n_ <=> b.n_;
    }
    for (int i = 0; i < a.n_; ++i) {
        const auto la = (a.code_ >> (2 * i)) & 3u;
        const auto lb = (b.code_ >> (2 * i)) & 3u;
        if (la != lb) {
            return la <=> lb;
        }
    }
    return std::strong_ordering::equal;
}

void WeightedObservable::add(const PauliString& p, double w) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("WeightedObservable::add: qubit count mismatch");
    }
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        if (w != 0.0) {
            terms_.emplace(p, w);
        }
        return;
    }
    it->second += w;
    if (it->second == 0.0) {
        terms_.erase(it);
    }
}

double WeightedObservable::weight(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0.0 : it->second;
}

WeightedObservable& WeightedObservable::operator+=(const WeightedObservable& other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("WeightedObservable::+=: qubit count mismatch");
    }
    for (const auto& [p, w] : other.terms_) {
        add(p, w);
    }
    return *this;
}

WeightedObservable WeightedObservable::scaled(double c) const {
    WeightedObservable out(n_);
    if (c == 0.0) {
        return out;
    }
    for (const auto& [p, w] : terms_) {
        out.terms_.emplace(p, c * w);
    }
    return out;
}

namespace {

void emit_combinations(int n, int m, int start, std::vector<int>& combo,
                       std::vector<PauliString>& out) {
    if (static_cast<int>(combo.size()) == m) {
        // All 3^m letter assignments over the chosen support, lexicographic.
        const int total = [&] {
            int t = 1;
            for (int i = 0; i < m; ++i) {
                t *= 3;
            }
            return t;
        }();
        for (int a = 0; a < total; ++a) {
            PauliString p(n);
            int rest = a;
            // Most-significant digit on the lowest qubit index so the order
            // is X.. < Y.. < Z.. on the first support qubit.
            int place = total / 3;
            for (int i = 0; i < m; ++i) {
                const int digit = rest / place;
                rest %= place;
                place /= 3;
                p = p.with_letter(combo[static_cast<std::size_t>(i)],
                                  static_cast<Pauli>(digit + 1));
            }
            out.push_back(p);
        }
        return;
    }
    for (int q = start; q < n; ++q) {
        combo.push_back(q);
        emit_combinations(n, m, q + 1, combo, out);
        combo.pop_back();
    }
}

} // namespace

std::vector<PauliString> enumerate_local(int n, int k) {
    if (n < 1 || n > PauliString::kMaxQubits) {
        throw std::invalid_argument("enumerate_local: invalid qubit count");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("enumerate_local: locality bound must be in [1, n]");
    }
    std::vector<PauliString> out;
    std::vector<int> combo;
    for (int m = 1; m <= k; ++m) {
        emit_combinations(n, m, 0, combo, out);
    }
    return out;
}

double lipschitz_ub(const WeightedObservable& h) {
    std::vector<double> per_qubit(static_cast<std::size_t>(h.num_qubits()), 0.0);
    for (const auto& [p, w] : h.terms()) {
        const double aw = std::abs(w);
        for (int i = 0; i < p.num_qubits(); ++i) {
            if (p.acts_on(i)) {
                per_qubit[static_cast<std::size_t>(i)] += aw;
            }
        }
    }
    double best = 0.0;
    for (double v : per_qubit) {
        best = std::max(best, v);
    }
    return 2.0 * best;
}

} // namespace qem
