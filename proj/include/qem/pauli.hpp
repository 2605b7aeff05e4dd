#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qem {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// Tensor product of single-qubit Pauli letters, stored base-4 (2 bits per
// qubit, qubit i at bits 2i..2i+1). Immutable value type; qubit 0 is the
// leftmost character in the label form ("XIZY").
class PauliString {
  public:
    static constexpr int kMaxQubits = 32;

    PauliString() = default;
    explicit PauliString(int n); // identity on n qubits

    static PauliString from_label(std::string_view label);
    static PauliString single(int n, int qubit, Pauli p);

    int num_qubits() const { return n_; }
    Pauli letter(int qubit) const;
    PauliString with_letter(int qubit, Pauli p) const;

    bool is_identity() const { return code_ == 0; }
    int locality() const;
    std::vector<int> support() const;
    bool acts_on(int qubit) const { return letter(qubit) != Pauli::I; }

    // Bit masks over qubit indices: x_mask has a bit set where the letter
    // flips the computational basis (X or Y); yz phase bits drive signs.
    std::uint64_t x_mask() const;
    std::uint64_t y_mask() const;
    std::uint64_t z_mask() const;

    std::string label() const;
    std::uint64_t packed() const { return code_; }

    friend bool operator==(const PauliString& a, const PauliString& b) = default;
    friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b);

  private:
    std::uint8_t n_ = 0;
    std::uint64_t code_ = 0;
};

struct PauliStringHash {
    std::size_t operator()(const PauliString& p) const noexcept {
        const std::uint64_t h = p.packed() * 0x9e3779b97f4a7c15ULL;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(p.num_qubits()) << 58));
    }
};

// Sparse real-weighted sum of Pauli strings on a fixed qubit count.
// Exact-zero weights are never stored.
class WeightedObservable {
  public:
    explicit WeightedObservable(int n) : n_(n) {}

    void add(const PauliString& p, double w);
    double weight(const PauliString& p) const;
    const std::map<PauliString, double>& terms() const { return terms_; }

    int num_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    WeightedObservable& operator+=(const WeightedObservable& other);
    WeightedObservable scaled(double c) const;

  private:
    int n_ = 0;
    std::map<PauliString, double> terms_;
};

// All non-identity Pauli strings with locality <= k, ordered by locality,
// then support combination, then letters. Count = sum_{m=1..k} C(n,m) 3^m.
std::vector<PauliString> enumerate_local(int n, int k);

// 2 max_i sum_{terms acting on qubit i} |weight|; upper bound on the
// quantum Lipschitz constant of h.
double lipschitz_ub(const WeightedObservable& h);

} // namespace qem
