#pragma once

#include <cmath>
#include <stdexcept>

namespace pzlab {

/// Bisection on [lo,hi]; requires a sign change. Returns the midpoint of the
/// final bracket once its width drops below xtol (absolute).
template <class F>
double bisect(const F& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0))
        throw std::domain_error("bisect: no sign change on the bracket");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section search for a maximum of f on [lo,hi].
template <class F>
double golden_max(const F& f, double lo, double hi, double xtol, int max_iter = 200) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace pzlab
