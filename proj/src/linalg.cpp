#include "qem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qem {

Matrix Matrix::identity(int d) {
    Matrix m(d);
    for (int i = 0; i < d; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim != rhs.dim) {
        throw std::invalid_argument("matrix product: dimension mismatch");
    }
    const int d = lhs.dim;
    Matrix out(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const cxd v = lhs.at(i, k);
            if (v == cxd{}) {
                continue;
            }
            for (int j = 0; j < d; ++j) {
                out.at(i, j) += v * rhs.at(k, j);
            }
        }
    }
    return out;
}

Matrix adjoint(const Matrix& m) {
    Matrix out(m.dim);
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            out.at(j, i) = std::conj(m.at(i, j));
        }
    }
    return out;
}

Matrix operator-(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim != rhs.dim) {
        throw std::invalid_argument("matrix difference: dimension mismatch");
    }
    Matrix out(lhs.dim);
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.a[i] = lhs.a[i] - rhs.a[i];
    }
    return out;
}

Matrix operator*(cxd s, const Matrix& m) {
    Matrix out(m.dim);
    for (std::size_t i = 0; i < out.a.size(); ++i) {
        out.a[i] = s * m.a[i];
    }
    return out;
}

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i) {
        worst = std::max(worst, std::abs(lhs.a[i] - rhs.a[i]));
    }
    return worst;
}

bool is_hermitian(const Matrix& m, double tol) {
    for (int i = 0; i < m.dim; ++i) {
        for (int j = i; j < m.dim; ++j) {
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double trace_real(const Matrix& m) {
    double t = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        t += m.at(i, i).real();
    }
    return t;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            if (i != j) {
                s += std::norm(m.at(i, j));
            }
        }
    }
    return std::sqrt(s);
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (const cxd& v : m.a) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

} // namespace

EigResult hermitian_eig(const Matrix& input) {
    if (input.dim < 1 || input.dim > 1024) {
        throw std::invalid_argument("hermitian_eig: dimension must be in [1, 1024]");
    }
    if (!is_hermitian(input, 1e-9)) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    }

    const int d = input.dim;
    Matrix a = input;
    // Symmetrize exactly so rounding in the input cannot bias the sweeps.
    for (int i = 0; i < d; ++i) {
        a.at(i, i) = cxd{a.at(i, i).real(), 0.0};
        for (int j = i + 1; j < d; ++j) {
            const cxd v = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }
    Matrix v = Matrix::identity(d);

    const double stop = 1e-11 * std::max(1.0, frobenius_norm(a));
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cxd apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) {
                    continue;
                }
                // Unitary J = [[c, -s*ph], [s*conj(ph), c]] with ph the phase
                // of the pivot entry; t solves t^2 - 2*tau*t - 1 = 0 (small
                // root) so that (J^dag A J)_{pq} = 0.
                const cxd ph = apq / mag;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0)
                                     ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cxd sp = s * ph;
                const cxd spc = s * std::conj(ph);
                // A <- A J  (columns p, q)
                for (int r = 0; r < d; ++r) {
                    const cxd arp = a.at(r, p);
                    const cxd arq = a.at(r, q);
                    a.at(r, p) = c * arp + spc * arq;
                    a.at(r, q) = -sp * arp + c * arq;
                }
                // A <- J^dag A  (rows p, q)
                for (int col = 0; col < d; ++col) {
                    const cxd apc = a.at(p, col);
                    const cxd aqc = a.at(q, col);
                    a.at(p, col) = c * apc + sp * aqc;
                    a.at(q, col) = -spc * apc + c * aqc;
                }
                // V <- V J
                for (int r = 0; r < d; ++r) {
                    const cxd vrp = v.at(r, p);
                    const cxd vrq = v.at(r, q);
                    v.at(r, p) = c * vrp + spc * vrq;
                    v.at(r, q) = -sp * vrp + c * vrq;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
            }
        }
        converged = off_diagonal_norm(a) < stop;
    }
    if (!converged) {
        throw numeric_error("hermitian_eig: Jacobi iteration did not converge in 100 sweeps");
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return a.at(lhs, lhs).real() > a.at(rhs, rhs).real();
    });

    EigResult out;
    out.values.resize(static_cast<std::size_t>(d));
    out.vectors = Matrix(d);
    for (int j = 0; j < d; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        out.values[static_cast<std::size_t>(j)] = a.at(src, src).real();
        for (int r = 0; r < d; ++r) {
            out.vectors.at(r, j) = v.at(r, src);
        }
    }
    return out;
}

} // namespace qem
