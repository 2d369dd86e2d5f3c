#ifndef PATHWAVE_ODE_HPP
#define PATHWAVE_ODE_HPP

#include <optional>
#include <vector>

#include "pathwave/model.hpp"

namespace pathwave {

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double sample_dt = 1.0;             // output sampling interval delta-t
    double t_end = 1000.0;
    double terminal_threshold = 1e-4;   // deviation of x_N marking wave arrival
    bool stop_on_arrival = false;

    void validate() const;
};

/// Fixed-interval samples of one integration, with the wave-arrival time at
/// the terminal node when it occurred.
struct Trajectory {
    PathwaySpec spec;
    IntegratorConfig config;
    std::vector<CascadeState> samples;  // states at t_j = j * sample_dt
    std::optional<double> arrival_time;

    std::size_t size() const { return samples.size(); }
};

/// Integrate the cascade with adaptive error control; samples are taken at
/// exact multiples of sample_dt from the dense interpolant.
Trajectory integrate(const PathwaySpec& spec, const IntegratorConfig& config);

/// Observed convergence order of the fixed-step scheme on the given problem
/// via a Richardson ratio at steps h, h/2, h/4.
double order_check(const PathwaySpec& spec, double t_end = 1.0, double h = 0.25);

} // namespace pathwave

#endif
