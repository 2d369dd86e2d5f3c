#ifndef PATHWAVE_STATIONARY_HPP
#define PATHWAVE_STATIONARY_HPP

#include <optional>
#include <vector>

#include "pathwave/model.hpp"

namespace pathwave {

/// Node-indexed steady-state profile under a constant boundary input,
/// generated by iterating the stationary balance map.
struct StationaryProfile {
    double x0;
    EdgeParams params;
    std::vector<double> values; // x_1 .. x_n
    double limit;               // -1 or +1, the asymptotic state
    double lambda;              // geometric tail decay rate
    std::optional<double> delta_i_approx;
    std::optional<double> delta_i_fit;

    // Tail deviation eps_i = |limit - x_i| for 1-based node index i.
    double eps(std::size_t i) const { return std::abs(limit - values[i - 1]); }
};

/// One application of the stationary map g: the unique root in (-1, 1) of the
/// per-node stationary balance, given the upstream value. Boundary values
/// +/-1 are fixed points.
double stationary_map(double x_prev, const EdgeParams& p);

/// Iterate the map n times from x0 (|x0| < 1, off the separatrix).
StationaryProfile stationary_profile(double x0, const EdgeParams& p, std::size_t n);

/// Geometric tail decay rate lambda = |g'(x*)| at the boundary state
/// x* = limit (+1 or -1).
double decay_rate(const EdgeParams& p, double limit);

/// Closed-form penetration-depth approximation (unbiased case phi = 0 only).
double penetration_depth_approx(double x0, const EdgeParams& p);

/// Penetration depth extracted by tail-fitting the profile with the decay
/// rate held at lambda.
double penetration_depth_fit(const StationaryProfile& profile);

} // namespace pathwave

#endif
