#ifndef ANSEC_QUADRATURE_HPP
#define ANSEC_QUADRATURE_HPP

#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "ansec/errors.hpp"

namespace ansec {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    int subdivisions = 0;
    bool converged = false;
};

struct QuadControl {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 10000;
};

namespace detail {

// Gauss-Kronrod 7/15 pair on [-1, 1] (QUADPACK dqk15 nodes/weights).
inline constexpr double gk15_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
inline constexpr double gk15_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
inline constexpr double g7_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

template <class F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& err) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_k = gk15_weights[7] * fc;
    double result_g = g7_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[i];
        const double fsum = f(center - dx) + f(center + dx);
        result_k += gk15_weights[i] * fsum;
        if (i % 2 == 1) result_g += g7_weights[i / 2] * fsum;
    }
    kronrod = result_k * half;
    const double gauss = result_g * half;
    const double diff = std::fabs(kronrod - gauss);
    // |K15-G7| is pessimistic once the pair has converged; sharpen as QUADPACK does
    err = diff > 0.0 ? std::min(diff, std::pow(200.0 * diff, 1.5)) : 0.0;
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

} // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]: bisects the
/// segment with the largest error estimate until the tolerance is met.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadControl& ctrl = {}) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Segment> heap;
    double value, error;
    detail::gk15(f, a, b, value, error);
    heap.push({a, b, value, error});
    double total = value;
    double total_err = error;
    int segments = 1;
    while (total_err > std::max(ctrl.abs_tol, ctrl.rel_tol * std::fabs(total))
           && segments < ctrl.max_subdivisions) {
        const detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        double v1, e1, v2, e2;
        detail::gk15(f, worst.a, mid, v1, e1);
        detail::gk15(f, mid, worst.b, v2, e2);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push({worst.a, mid, v1, e1});
        heap.push({mid, worst.b, v2, e2});
        ++segments;
    }
    out.value = total;
    out.abs_error = total_err;
    out.subdivisions = segments;
    out.converged = total_err <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::fabs(total));
    return out;
}

/// Same, but throws numerical_failure (carrying the achieved error) when the
/// tolerance could not be met within the subdivision budget.
template <class F>
double integrate_or_throw(F&& f, double a, double b, const QuadControl& ctrl = {}) {
    const QuadResult r = integrate_adaptive(std::forward<F>(f), a, b, ctrl);
    if (!r.converged) {
        throw numerical_failure("adaptive quadrature did not converge", r.abs_error);
    }
    return r.value;
}

/// Integral of f over [a, +inf), via the map x = a + t/(1-t), t in [0, 1).
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadControl& ctrl = {}) {
    auto g = [&](double t) {
        const double one_minus = 1.0 - t;
        const double x = a + t / one_minus;
        return f(x) / (one_minus * one_minus);
    };
    return integrate_adaptive(g, 0.0, 1.0, ctrl);
}

} // namespace ansec

#endif
