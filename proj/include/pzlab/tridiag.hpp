#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pzlab {

/// Thomas solver for a constant-coefficient tridiagonal system, prefactored
/// so repeated solves cost one forward and one backward sweep.
/// Row i: sub[i-1]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i].
class TridiagonalFactors {
public:
    TridiagonalFactors() = default;
    TridiagonalFactors(std::vector<double> sub, std::vector<double> diag,
                       std::vector<double> sup)
        : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup)) {
        const size_t n = diag_.size();
        if (sub_.size() + 1 != n || sup_.size() + 1 != n)
            throw std::invalid_argument("TridiagonalFactors: size mismatch");
        cstar_.resize(n - 1);
        dinv_.resize(n);
        double b = diag_[0];
        dinv_[0] = 1.0 / b;
        for (size_t i = 1; i < n; ++i) {
            cstar_[i - 1] = sup_[i - 1] * dinv_[i - 1];
            b = diag_[i] - sub_[i - 1] * cstar_[i - 1];
            if (b == 0.0) throw std::runtime_error("TridiagonalFactors: singular pivot");
            dinv_[i] = 1.0 / b;
        }
    }

    size_t size() const { return dinv_.size(); }

    /// Solves in place.
    void solve(std::vector<double>& x) const {
        const size_t n = dinv_.size();
        x[0] *= dinv_[0];
        for (size_t i = 1; i < n; ++i) x[i] = (x[i] - sub_[i - 1] * x[i - 1]) * dinv_[i];
        for (size_t i = n - 1; i-- > 0;) x[i] -= cstar_[i] * x[i + 1];
    }

private:
    std::vector<double> sub_, diag_, sup_;
    std::vector<double> cstar_, dinv_;
};

/// Smallest eigenvalue of a symmetric tridiagonal matrix (diag d, off-diagonal e)
/// by Sturm-sequence bisection.
inline double tridiag_smallest_eigenvalue(const std::vector<double>& d,
                                          const std::vector<double>& e,
                                          double tol = 1e-13) {
    const size_t n = d.size();
    if (n == 0) throw std::invalid_argument("tridiag_smallest_eigenvalue: empty");
    if (e.size() + 1 != n) throw std::invalid_argument("tridiag_smallest_eigenvalue: size");
    double lo = d[0], hi = d[0];
    for (size_t i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i + 1 < n) r += std::abs(e[i]);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    // count of eigenvalues below x via the LDL^T sign recurrence
    auto count_below = [&](double x) {
        int cnt = 0;
        double q = d[0] - x;
        if (q < 0) ++cnt;
        for (size_t i = 1; i < n; ++i) {
            if (q == 0.0) q = 1e-300;
            q = d[i] - x - e[i - 1] * e[i - 1] / q;
            if (q < 0) ++cnt;
        }
        return cnt;
    };
    for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_below(mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pzlab
