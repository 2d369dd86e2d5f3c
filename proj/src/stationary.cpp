#include "pathwave/stationary.hpp"

#include <cmath>
#include <string>

namespace pathwave {

double stationary_map(double x_prev, const EdgeParams& p) {
    if (std::abs(x_prev) > 1.0)
        throw DomainError("stationary map input outside [-1, 1]");
    if (x_prev == 1.0 || x_prev == -1.0) return x_prev;
    const double B = p.B();
    // Rationalized root of x^2 + (B-1)*chi*x - B = 0 with chi factored as
    // (1 + phi*x_prev)/(phi + x_prev); multiplying through by (phi + x_prev)
    // keeps the branch choice automatic and is exact at the removable
    // singularity x_prev = -phi, where the root is 0.
    const double u = p.phi + x_prev;       // sign selects the branch
    const double v = 1.0 + p.phi * x_prev; // > 0 on the open domain
    const double disc = std::sqrt((B - 1.0) * (B - 1.0) * v * v + 4.0 * B * u * u);
    return 2.0 * B * u / ((B - 1.0) * v + disc);
}

StationaryProfile stationary_profile(double x0, const EdgeParams& p, std::size_t n) {
    p.validate();
    if (!(std::abs(x0) < 1.0)) throw DomainError("x0 must lie strictly inside (-1, 1)");
    if (n < 1) throw DomainError("profile length must be at least 1");
    const double xi = p.xi();
    if (x0 == xi) throw DomainError("separatrix: constant profile");

    StationaryProfile prof;
    prof.x0 = x0;
    prof.params = p;
    prof.limit = (x0 > xi) ? 1.0 : -1.0;
    prof.values.resize(n);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = stationary_map(x, p);
        prof.values[i] = x;
    }
    prof.lambda = decay_rate(p, prof.limit);
    if (p.phi == 0.0 && x0 != 0.0)
        prof.delta_i_approx = penetration_depth_approx(x0, p);
    return prof;
}

double decay_rate(const EdgeParams& p, double limit) {
    p.validate();
    if (p.phi == 1.0 || p.phi == -1.0)
        throw DomainError("decay rate is singular at |phi| = 1");
    if (limit != 1.0 && limit != -1.0)
        throw DomainError("limit must be +1 or -1");
    const double B = p.B();
    const double ratio = (1.0 - p.phi) / (1.0 + p.phi);
    return std::pow(ratio, limit) * (B - 1.0) / (B + 1.0);
}

double penetration_depth_approx(double x0, const EdgeParams& p) {
    p.validate();
    if (p.phi != 0.0)
        throw DomainError("penetration-depth approximation is derived for phi = 0 only");
    if (x0 == 0.0)
        throw DomainError("penetration depth diverges at the separatrix x0 = 0");
    if (!(std::abs(x0) < 1.0)) throw DomainError("x0 must lie strictly inside (-1, 1)");
    const double lambda = decay_rate(p, 1.0);
    const double a = std::abs(x0);
    return std::log(2.0 * a * a / (1.0 + a)) / std::log(lambda);
}

double penetration_depth_fit(const StationaryProfile& profile) {
    // Fit ln(eps_i) = ln(1 - |x0|) + (i - di) * ln(lambda) over the
    // asymptotic tail with the slope pinned at ln(lambda); di is the only
    // free parameter. Window excludes the pre-asymptotic transient
    // (eps > 1e-3) and rounding-dominated values (eps < 1e-10).
    const double log_lambda = std::log(profile.lambda);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i <= profile.values.size(); ++i) {
        const double e = profile.eps(i);
        if (e < 1e-10 || e > 1e-3) continue;
        acc += std::log(e) - static_cast<double>(i) * log_lambda;
        ++count;
    }
    if (count < 5)
        throw DomainError("stationary tail has fewer than 5 points with eps in [1e-10, 1e-3];"
                          " increase the profile length n");
    const double intercept = acc / static_cast<double>(count);
    return (std::log(1.0 - std::abs(profile.x0)) - intercept) / log_lambda;
}

} // namespace pathwave
