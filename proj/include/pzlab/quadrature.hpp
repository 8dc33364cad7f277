#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pzlab {

struct QuadOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_intervals = 20000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1,1].
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    double fc = f(c);
    double k = kronrod_w[7] * fc;
    double g = gauss_w[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = m * kronrod_x[i];
        double s = f(c + dx) + f(c - dx);
        k += kronrod_w[i] * s;
        if (i % 2 == 1) g += gauss_w[i / 2] * s;
    }
    value = k * m;
    err = std::abs((k - g) * m);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a,b].
/// Throws std::runtime_error if the interval budget is exhausted without
/// reaching the requested tolerance.
template <class F>
double integrate(const F& f, double a, double b, QuadOptions opt = {}) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    double v0, e0;
    detail::gk15(f, a, b, v0, e0);
    std::vector<Seg> work{{a, b, v0, e0}};
    double total = v0, total_err = e0;
    int used = 1;
    while (true) {
        double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (total_err <= tol) break;
        // split the segment with the largest error
        size_t worst = 0;
        for (size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[worst].err) worst = i;
        if (used >= opt.max_intervals) {
            if (total_err > 100.0 * tol)
                throw std::runtime_error("integrate: interval budget exhausted");
            break;
        }
        Seg s = work[worst];
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) break;  // machine resolution reached
        Seg l{s.a, mid, 0, 0}, r{mid, s.b, 0, 0};
        detail::gk15(f, l.a, l.b, l.val, l.err);
        detail::gk15(f, r.a, r.b, r.val, r.err);
        total += l.val + r.val - s.val;
        total_err += l.err + r.err - s.err;
        work[worst] = l;
        work.push_back(r);
        ++used;
    }
    return total;
}

/// Integral of h over [0,w] where h(s) has an inverse-square-root singularity
/// at s = 0: the caller supplies h as a function of the OFFSET s from the
/// singular endpoint, and the substitution s = t^2 regularises it.
/// Returns int_0^w h(s) ds = int_0^sqrt(w) 2 t h(t^2) dt.
template <class F>
double integrate_from_singular_offset(const F& h, double w, QuadOptions opt = {}) {
    if (w <= 0) return 0.0;
    double tmax = std::sqrt(w);
    return integrate([&h](double t) { return 2.0 * t * h(t * t); }, 0.0, tmax, opt);
}

}  // namespace pzlab
