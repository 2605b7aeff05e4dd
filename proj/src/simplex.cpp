#include "qem/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qem {

namespace {

constexpr double kPriceTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 200000;

// Solve M x = rhs by Gauss-Jordan with partial pivoting. M is row-major.
std::vector<double> dense_solve(std::vector<double> m, std::vector<double> rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(m[static_cast<std::size_t>(r) * n + col]) >
                std::abs(m[static_cast<std::size_t>(pivot) * n + col])) {
                pivot = r;
            }
        }
        const double pv = m[static_cast<std::size_t>(pivot) * n + col];
        if (std::abs(pv) < 1e-13) {
            throw numeric_error("simplex: singular basis matrix");
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                          m[static_cast<std::size_t>(col) * n + j]);
            }
            std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
        }
        const double inv = 1.0 / m[static_cast<std::size_t>(col) * n + col];
        for (int j = 0; j < n; ++j) {
            m[static_cast<std::size_t>(col) * n + j] *= inv;
        }
        rhs[static_cast<std::size_t>(col)] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const double f = m[static_cast<std::size_t>(r) * n + col];
            if (f == 0.0) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                m[static_cast<std::size_t>(r) * n + j] -=
                    f * m[static_cast<std::size_t>(col) * n + j];
            }
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    return rhs;
}

} // namespace

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& a,
                               const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<RowType>& rows) {
    const int nrows = static_cast<int>(b.size());
    const int nvars = static_cast<int>(c.size());
    if (static_cast<int>(a.size()) != nrows || static_cast<int>(rows.size()) != nrows) {
        throw std::invalid_argument("simplex: inconsistent row counts");
    }
    for (const auto& row : a) {
        if (static_cast<int>(row.size()) != nvars) {
            throw std::invalid_argument("simplex: inconsistent column counts");
        }
    }
    for (double v : b) {
        if (v < -1e-12) {
            throw std::invalid_argument("simplex: requires b >= 0");
        }
    }

    // Column layout: [original | slacks for <= rows | artificials for = rows].
    std::vector<int> slack_col(static_cast<std::size_t>(nrows), -1);
    std::vector<int> art_col(static_cast<std::size_t>(nrows), -1);
    int ncols = nvars;
    for (int r = 0; r < nrows; ++r) {
        if (rows[static_cast<std::size_t>(r)] == RowType::LessEq) {
            slack_col[static_cast<std::size_t>(r)] = ncols++;
        }
    }
    const int first_art = ncols;
    for (int r = 0; r < nrows; ++r) {
        if (rows[static_cast<std::size_t>(r)] == RowType::Eq) {
            art_col[static_cast<std::size_t>(r)] = ncols++;
        }
    }

    auto column_entry = [&](int col, int row) -> double {
        if (col < nvars) {
            return a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        }
        if (col == slack_col[static_cast<std::size_t>(row)] ||
            col == art_col[static_cast<std::size_t>(row)]) {
            return 1.0;
        }
        return 0.0;
    };

    std::vector<int> basis(static_cast<std::size_t>(nrows));
    for (int r = 0; r < nrows; ++r) {
        basis[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r)] == RowType::LessEq
                                                 ? slack_col[static_cast<std::size_t>(r)]
                                                 : art_col[static_cast<std::size_t>(r)];
    }

    std::vector<double> xb;
    std::vector<double> dual;

    auto run_phase = [&](const std::vector<double>& cost, bool allow_artificials) {
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            // Dense basis factorization: B^T y = c_B for the duals,
            // B x_B = b for the basic values.
            std::vector<double> bmat(static_cast<std::size_t>(nrows) * nrows);
            std::vector<double> btrans(static_cast<std::size_t>(nrows) * nrows);
            for (int r = 0; r < nrows; ++r) {
                for (int k = 0; k < nrows; ++k) {
                    const double v = column_entry(basis[static_cast<std::size_t>(k)], r);
                    bmat[static_cast<std::size_t>(r) * nrows + k] = v;
                    btrans[static_cast<std::size_t>(k) * nrows + r] = v;
                }
            }
            xb = dense_solve(bmat, b, nrows);
            std::vector<double> cb(static_cast<std::size_t>(nrows));
            for (int k = 0; k < nrows; ++k) {
                cb[static_cast<std::size_t>(k)] =
                    cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(k)])];
            }
            dual = dense_solve(btrans, cb, nrows);

            // Bland: entering column = lowest index with positive reduced cost.
            std::vector<bool> in_basis(static_cast<std::size_t>(ncols), false);
            for (int v : basis) {
                in_basis[static_cast<std::size_t>(v)] = true;
            }
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                if (in_basis[static_cast<std::size_t>(j)]) {
                    continue;
                }
                if (!allow_artificials && j >= first_art) {
                    continue;
                }
                double red = cost[static_cast<std::size_t>(j)];
                for (int r = 0; r < nrows; ++r) {
                    red -= dual[static_cast<std::size_t>(r)] * column_entry(j, r);
                }
                if (red > kPriceTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                return;
            }

            std::vector<double> acol(static_cast<std::size_t>(nrows));
            for (int r = 0; r < nrows; ++r) {
                acol[static_cast<std::size_t>(r)] = column_entry(enter, r);
            }
            for (int r = 0; r < nrows; ++r) {
                for (int k = 0; k < nrows; ++k) {
                    const double v = column_entry(basis[static_cast<std::size_t>(k)], r);
                    bmat[static_cast<std::size_t>(r) * nrows + k] = v;
                }
            }
            const std::vector<double> dir = dense_solve(bmat, acol, nrows);

            // Ratio test; ties go to the smallest basic variable index.
            int leave = -1;
            double best_ratio = 0.0;
            for (int r = 0; r < nrows; ++r) {
                const double d = dir[static_cast<std::size_t>(r)];
                if (d <= kPivotTol) {
                    continue;
                }
                const double ratio = std::max(xb[static_cast<std::size_t>(r)], 0.0) / d;
                if (leave < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 &&
                     basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) {
                throw numeric_error("simplex: unbounded direction");
            }
            basis[static_cast<std::size_t>(leave)] = enter;
        }
        throw numeric_error("simplex: iteration cap exceeded");
    };

    const bool has_artificials = first_art < ncols;
    if (has_artificials) {
        std::vector<double> phase1_cost(static_cast<std::size_t>(ncols), 0.0);
        for (int j = first_art; j < ncols; ++j) {
            phase1_cost[static_cast<std::size_t>(j)] = -1.0;
        }
        run_phase(phase1_cost, true);
        double infeasibility = 0.0;
        for (int r = 0; r < nrows; ++r) {
            if (basis[static_cast<std::size_t>(r)] >= first_art) {
                infeasibility += std::max(xb[static_cast<std::size_t>(r)], 0.0);
            }
        }
        if (infeasibility > 1e-8) {
            throw numeric_error("simplex: problem is infeasible");
        }
        // Pivot zero-level artificials out of the basis so phase 2 cannot
        // re-inflate them. A row where no real column can replace the
        // artificial is redundant; its artificial stays pinned at zero.
        for (int r = 0; r < nrows; ++r) {
            if (basis[static_cast<std::size_t>(r)] < first_art) {
                continue;
            }
            std::vector<double> btrans(static_cast<std::size_t>(nrows) * nrows);
            for (int row = 0; row < nrows; ++row) {
                for (int k = 0; k < nrows; ++k) {
                    btrans[static_cast<std::size_t>(k) * nrows + row] =
                        column_entry(basis[static_cast<std::size_t>(k)], row);
                }
            }
            std::vector<double> unit(static_cast<std::size_t>(nrows), 0.0);
            unit[static_cast<std::size_t>(r)] = 1.0;
            const std::vector<double> binv_row = dense_solve(btrans, unit, nrows);
            std::vector<bool> in_basis(static_cast<std::size_t>(ncols), false);
            for (int v : basis) {
                in_basis[static_cast<std::size_t>(v)] = true;
            }
            for (int j = 0; j < first_art; ++j) {
                if (in_basis[static_cast<std::size_t>(j)]) {
                    continue;
                }
                double dot = 0.0;
                for (int row = 0; row < nrows; ++row) {
                    dot += binv_row[static_cast<std::size_t>(row)] * column_entry(j, row);
                }
                if (std::abs(dot) > 1e-9) {
                    basis[static_cast<std::size_t>(r)] = j;
                    break;
                }
            }
        }
    }

    std::vector<double> phase2_cost(static_cast<std::size_t>(ncols), 0.0);
    std::copy(c.begin(), c.end(), phase2_cost.begin());
    run_phase(phase2_cost, false);

    SimplexResult result;
    result.x.assign(static_cast<std::size_t>(nvars), 0.0);
    for (int r = 0; r < nrows; ++r) {
        const int v = basis[static_cast<std::size_t>(r)];
        if (v < nvars) {
            result.x[static_cast<std::size_t>(v)] = std::max(xb[static_cast<std::size_t>(r)], 0.0);
        }
    }
    result.dual = dual;
    result.objective = 0.0;
    for (int j = 0; j < nvars; ++j) {
        result.objective += c[static_cast<std::size_t>(j)] * result.x[static_cast<std::size_t>(j)];
    }
    return result;
}

} // namespace qem
