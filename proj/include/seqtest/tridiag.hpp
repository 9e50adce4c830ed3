#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace seqtest {

/**
 * Thomas-algorithm solver for tridiagonal systems. Keeps its scratch space so
 * repeated solves of the same size (one per backward time step) do not
 * allocate. No pivoting: callers must supply diagonally dominant systems,
 * which all schemes in this project produce.
 */
class TridiagonalSolver {
public:
    // Solves (sub, diag, super) x = rhs in place of rhs. sub[0] and
    // super[n-1] are ignored.
    void solve(const std::vector<double>& sub, const std::vector<double>& diag,
               const std::vector<double>& super, std::vector<double>& rhs) {
        const std::size_t n = diag.size();
        if (n == 0 || sub.size() != n || super.size() != n || rhs.size() != n) {
            throw std::invalid_argument("tridiagonal: band sizes must match");
        }
        scratch_.resize(n);
        double pivot = diag[0];
        rhs[0] /= pivot;
        for (std::size_t i = 1; i < n; ++i) {
            scratch_[i] = super[i - 1] / pivot;
            pivot = diag[i] - sub[i] * scratch_[i];
            rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
        }
        for (std::size_t i = n - 1; i-- > 0;) {
            rhs[i] -= scratch_[i + 1] * rhs[i + 1];
        }
    }

private:
    std::vector<double> scratch_;
};

} // namespace seqtest
