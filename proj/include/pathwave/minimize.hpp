#ifndef PATHWAVE_MINIMIZE_HPP
#define PATHWAVE_MINIMIZE_HPP

#include <cstddef>

namespace pathwave {

struct ScalarMin {
    double x;
    double f;
    bool flat; // objective indistinguishable from constant over the scan
};

/// Minimize f over [lo, hi]: a coarse grid scan locates the basin, then
/// golden-section refinement shrinks the bracket to `width`. The grid guards
/// against capture by shallow secondary minima; candidates always include
/// both endpoints.
template <typename F>
ScalarMin minimize_scalar(F&& f, double lo, double hi, std::size_t grid_points, double width) {
    constexpr double kInvPhi = 0.6180339887498949; // 1/golden ratio
    const double span = hi - lo;

    double best_x = lo, best_f = f(lo);
    double worst_f = best_f;
    const std::size_t m = grid_points < 2 ? 2 : grid_points;
    std::size_t best_k = 0;
    for (std::size_t k = 1; k < m; ++k) {
        const double x = lo + span * static_cast<double>(k) / static_cast<double>(m - 1);
        const double v = f(x);
        if (v < best_f) {
            best_f = v;
            best_x = x;
            best_k = k;
        }
        if (v > worst_f) worst_f = v;
    }
    if (worst_f - best_f < 1e-14)
        return {lo, best_f, true};

    const double cell = span / static_cast<double>(m - 1);
    double a = best_k == 0 ? lo : best_x - cell;
    double b = best_k == m - 1 ? hi : best_x + cell;

    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > width) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = f1 <= f2 ? x1 : x2;
    double fm = f1 <= f2 ? f1 : f2;
    if (best_f < fm) {
        xm = best_x;
        fm = best_f;
    }
    return {xm, fm, false};
}

} // namespace pathwave

#endif
