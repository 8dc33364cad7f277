#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pzlab {

/// Cubic spline through (x_i, y_i) with not-a-knot ends (natural ends when
/// fewer than four knots), exact piecewise evaluation, derivative and
/// antiderivative. Knots must be strictly increasing.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need >= 2 matching knots");
        for (size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("CubicSpline: knots must increase");
        m_.assign(n, 0.0);  // second derivatives at the knots
        if (n > 2) {
            std::vector<double> a(n - 2), b(n - 2), c(n - 2), r(n - 2);
            for (size_t i = 1; i + 1 < n; ++i) {
                double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
                a[i - 1] = hl / 6.0;
                b[i - 1] = (hl + hr) / 3.0;
                c[i - 1] = hr / 6.0;
                r[i - 1] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
            }
            bool not_a_knot = n >= 4;
            if (not_a_knot) {
                // m_0 and m_{n-1} eliminated via third-derivative continuity
                double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
                double al = h0 / h1;
                b[0] += (h0 / 6.0) * (1.0 + al);
                c[0] -= (h0 / 6.0) * al;
                double hm = x_[n - 1] - x_[n - 2], hp = x_[n - 2] - x_[n - 3];
                double ar = hm / hp;
                b[n - 3] += (hm / 6.0) * (1.0 + ar);
                a[n - 3] -= (hm / 6.0) * ar;
            }
            // Thomas
            for (size_t i = 1; i < a.size(); ++i) {
                double w = a[i] / b[i - 1];
                b[i] -= w * c[i - 1];
                r[i] -= w * r[i - 1];
            }
            m_[n - 2] = r.back() / b.back();
            for (size_t i = r.size() - 1; i-- > 0;)
                m_[i + 1] = (r[i] - c[i] * m_[i + 2]) / b[i];
            if (not_a_knot) {
                double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
                m_[0] = m_[1] + (h0 / h1) * (m_[1] - m_[2]);
                double hm = x_[n - 1] - x_[n - 2], hp = x_[n - 2] - x_[n - 3];
                m_[n - 1] = m_[n - 2] + (hm / hp) * (m_[n - 2] - m_[n - 3]);
            }
        }
        // cumulative integral from x_[0] to each knot
        cum_.assign(n, 0.0);
        for (size_t i = 0; i + 1 < n; ++i)
            cum_[i + 1] = cum_[i] + piece_integral(i, x_[i], x_[i + 1]);
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double value(double x) const {
        size_t i = locate(x);
        double h = x_[i + 1] - x_[i];
        double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double x) const {
        size_t i = locate(x);
        double h = x_[i + 1] - x_[i];
        double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6.0;
    }

    /// Exact integral over [a,b], both inside the knot range.
    double integral(double a, double b) const {
        if (a > b) return -integral(b, a);
        size_t ia = locate(a), ib = locate(b);
        if (ia == ib) return piece_integral(ia, a, b);
        double s = piece_integral(ia, a, x_[ia + 1]);
        s += cum_[ib] - cum_[ia + 1];
        s += piece_integral(ib, x_[ib], b);
        return s;
    }

private:
    size_t locate(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        size_t i = (it == x_.begin()) ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
        return std::min(i, x_.size() - 2);
    }

    double piece_integral(size_t i, double a, double b) const {
        // antiderivative of the cubic piece, evaluated via midpoint expansion
        // (cancellation-free for narrow [a,b])
        double h = x_[i + 1] - x_[i];
        double mid = 0.5 * (a + b), d = 0.5 * (b - a);
        double A = (x_[i + 1] - mid) / h, B = (mid - x_[i]) / h;
        double v = A * y_[i] + B * y_[i + 1] +
                   ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
        double v2 = A * m_[i] + B * m_[i + 1];  // second derivative at mid
        return 2 * d * v + (d * d * d / 3.0) * v2;
    }

    std::vector<double> x_, y_, m_, cum_;
};

/// Cubic Hermite evaluation on [x0,x1] from endpoint values and derivatives.
inline double hermite(double x0, double x1, double y0, double y1, double d0, double d1,
                      double x) {
    double h = x1 - x0;
    double t = (x - x0) / h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace pzlab
