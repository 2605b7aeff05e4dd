#pragma once

#include <vector>

#include "qem/linalg.hpp"

namespace qem {

enum class RowType { LessEq, Eq };

struct SimplexResult {
    std::vector<double> x;    // primal solution, one entry per column
    std::vector<double> dual; // one multiplier per row
    double objective = 0.0;
};

// maximize c.x subject to A x (<=|=) b, x >= 0, b >= 0. Revised simplex with
// Bland's anti-cycling rule and a dense basis solve per iteration; equality
// rows get phase-1 artificials. Throws numeric_error if the iteration cap is
// hit or phase 1 cannot reach feasibility.
SimplexResult simplex_maximize(const std::vector<std::vector<double>>& a,
                               const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<RowType>& rows);

} // namespace qem
