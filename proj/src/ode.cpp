#include "pathwave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pathwave/dopri5.hpp"

namespace pathwave {

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw DomainError("rel_tol must lie in (0, 1e-2]");
    if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) throw DomainError("abs_tol must lie in (0, 1e-2]");
    if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be positive");
    if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
    if (sample_dt > t_end) throw DomainError("sample_dt must not exceed t_end");
    if (!(terminal_threshold > 0.0)) throw DomainError("terminal_threshold must be positive");
}

namespace {

void check_invariance(std::span<const double> x, double t) {
    for (double v : x)
        if (!(std::abs(v) <= 1.0 + kDomainTol))
            throw IntegrationError("state left the [-1, 1] domain (|x| - 1 = " +
                                       std::to_string(std::abs(v) - 1.0) + ") at t = " +
                                       std::to_string(t),
                                   t);
}

// The dense interpolant can wiggle past +/-1 by its own error near hard
// saturation (B close to 1) even though the step states stay inside. Project
// such samples onto the boundary; anything beyond the error band is a real
// escape and stays fatal.
void project_sample(std::span<double> x, double band, double t) {
    for (double& v : x) {
        const double excess = std::abs(v) - 1.0;
        if (excess <= 0.0) continue;
        if (excess <= band)
            v = std::copysign(1.0, v);
        else
            throw IntegrationError("state left the [-1, 1] domain (|x| - 1 = " +
                                       std::to_string(excess) + ") at t = " + std::to_string(t),
                                   t);
    }
}

} // namespace

Trajectory integrate(const PathwaySpec& spec, const IntegratorConfig& config) {
    spec.validate();
    config.validate();

    Trajectory traj;
    traj.spec = spec;
    traj.config = config;

    OdeRhs rhs = [&spec](double, std::span<const double> y, std::span<double> dydt) {
        pathway_rhs_into(y, spec, dydt);
    };

    std::vector<double> y0 = spec.initial_state();
    const double xN0 = y0.back();
    traj.samples.push_back({0.0, y0});

    const double band = 50.0 * (config.rel_tol + config.abs_tol);
    Dopri5::Options opts{config.rel_tol, config.abs_tol};
    // Keep accepted states inside the invariant region; escapes beyond the
    // error band surface through check_invariance below.
    opts.project = [band](std::span<double> y) {
        for (double& v : y) {
            const double excess = std::abs(v) - 1.0;
            if (excess > 0.0 && excess <= band) v = std::copysign(1.0, v);
        }
    };
    Dopri5 stepper(rhs, std::move(y0), 0.0, std::move(opts));

    const double dt = config.sample_dt;
    std::size_t next_sample = 1;
    std::vector<double> xs(spec.n());
    double prev_dev = 0.0;

    while (stepper.step(config.t_end)) {
        check_invariance(stepper.y(), stepper.t());
        bool stop = false;
        while (true) {
            const double ts = static_cast<double>(next_sample) * dt;
            if (ts > config.t_end || ts > stepper.t() * (1.0 + 1e-14)) break;
            stepper.dense_eval(std::min(ts, stepper.t()), xs);
            project_sample(xs, band, ts);
            traj.samples.push_back({ts, xs});
            ++next_sample;

            const double dev = std::abs(xs.back() - xN0);
            if (!traj.arrival_time && dev >= config.terminal_threshold) {
                // Linear interpolation between the bracketing samples.
                const double t1 = ts, t0 = t1 - dt;
                const double frac =
                    (dev > prev_dev) ? (config.terminal_threshold - prev_dev) / (dev - prev_dev)
                                     : 1.0;
                traj.arrival_time = t0 + frac * dt;
                if (config.stop_on_arrival) {
                    stop = true;
                    break;
                }
            }
            prev_dev = dev;
        }
        if (stop) break;
    }
    return traj;
}

double order_check(const PathwaySpec& spec, double t_end, double h) {
    spec.validate();
    OdeRhs rhs = [&spec](double, std::span<const double> y, std::span<double> dydt) {
        pathway_rhs_into(y, spec, dydt);
    };
    const std::vector<double> y0 = spec.initial_state();
    const auto a = dopri5_fixed_step(rhs, y0, 0.0, t_end, h);
    const auto b = dopri5_fixed_step(rhs, y0, 0.0, t_end, h / 2);
    const auto c = dopri5_fixed_step(rhs, y0, 0.0, t_end, h / 4);
    double d_ab = 0.0, d_bc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d_ab = std::max(d_ab, std::abs(a[i] - b[i]));
        d_bc = std::max(d_bc, std::abs(b[i] - c[i]));
    }
    if (d_bc == 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(d_ab / d_bc);
}

} // namespace pathwave
