#pragma once

#include <complex>
#include <vector>

namespace qem {

using cxd = std::complex<double>;

// Dense square complex matrix, row-major.
struct Matrix {
    int dim = 0;
    std::vector<cxd> a;

    Matrix() = default;
    explicit Matrix(int d) : dim(d), a(static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {}

    cxd& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
    const cxd& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

    static Matrix identity(int d);
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix adjoint(const Matrix& m);
Matrix operator-(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cxd s, const Matrix& m);

double max_abs_diff(const Matrix& lhs, const Matrix& rhs);
bool is_hermitian(const Matrix& m, double tol);
double trace_real(const Matrix& m);

struct EigResult {
    std::vector<double> values; // descending
    Matrix vectors;             // column j is the eigenvector of values[j]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Iterates sweeps until
// the off-diagonal Frobenius norm drops below 1e-11 (scaled by the input
// norm); throws numeric_error after 100 sweeps without convergence and
// invalid_argument for non-Hermitian input or dim > 1024.
EigResult hermitian_eig(const Matrix& m);

class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qem
