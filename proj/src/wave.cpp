#include "pathwave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathwave/minimize.hpp"

namespace pathwave {

namespace {

constexpr std::size_t kGridPoints = 128;
constexpr double kShiftWidth = 1e-12; // bracket width on the normalized shift

// Profile values interpolated on positions pre-normalized by the domain
// length, so both frames minimize over the same unit shift variable.
std::vector<double> normalized(std::span<const double> positions) {
    std::vector<double> p(positions.begin(), positions.end());
    const double L = positions.back();
    for (double& v : p) v /= L;
    return p;
}

double interp_normalized(std::span<const double> x, const std::vector<double>& pos, double q) {
    if (q <= pos.front()) return x.front();
    if (q >= pos.back()) return x.back();
    const auto it = std::upper_bound(pos.begin(), pos.end(), q);
    const std::size_t k = static_cast<std::size_t>(it - pos.begin()) - 1;
    const double w = (q - pos[k]) / (pos[k + 1] - pos[k]);
    return x[k] + w * (x[k + 1] - x[k]);
}

struct ShiftFit {
    double fraction; // shift as a fraction of the domain length
    double value;
    bool flat;
};

// Least-squares translation of `from` onto `to` over normalized shift
// fractions in [lo, hi].
ShiftFit fit_shift(std::span<const double> to, std::span<const double> from,
                   const std::vector<double>& pos, std::span<const double> weights, double lo,
                   double hi) {
    const std::size_t n = pos.size();
    // Queries pos[i] - tau ascend with i, so one merge sweep replaces per-query
    // binary searches.
    auto objective = [&](double tau) {
        double acc = 0.0;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = pos[i] - tau;
            double v;
            if (q <= pos.front()) {
                v = from.front();
            } else if (q >= pos.back()) {
                v = from.back();
            } else {
                while (pos[k + 1] < q) ++k;
                const double w = (q - pos[k]) / (pos[k + 1] - pos[k]);
                v = from[k] + w * (from[k + 1] - from[k]);
            }
            const double d = to[i] - v;
            acc += weights.empty() ? d * d : weights[i] * d * d;
        }
        return acc;
    };
    const ScalarMin m = minimize_scalar(objective, lo, hi, kGridPoints, kShiftWidth);
    if (m.flat) return {0.0, m.f, true};
    if (lo <= 0.0 && 0.0 <= hi) {
        const double f0 = objective(0.0);
        if (f0 <= m.f) return {0.0, f0, false};
    }
    return {m.x, m.f, false};
}

} // namespace

double interp_profile(std::span<const double> x, std::span<const double> positions, double q) {
    std::vector<double> pos(positions.begin(), positions.end());
    return interp_normalized(x, pos, q);
}

VelocityEstimate instantaneous_velocity(const CascadeState& prev, const CascadeState& next,
                                        std::span<const double> positions, double dt) {
    if (prev.x.size() != positions.size() || next.x.size() != positions.size())
        throw DomainError("profile/position size mismatch");
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    const std::vector<double> pos = normalized(positions);
    const ShiftFit fit = fit_shift(next.x, prev.x, pos, {}, 0.0, 1.0);
    if (fit.flat) return {0.0, 0.0, true};
    const double c = fit.fraction * (positions.back() / dt);
    return {c, fit.fraction, c == 0.0};
}

VelocitySeries velocity_series(const Trajectory& traj, std::span<const double> positions,
                               Frame frame, std::size_t from) {
    VelocitySeries s;
    s.frame = frame;
    if (traj.size() < from + 2) return s;
    const double dt = traj.config.sample_dt;
    const std::size_t m = traj.size() - 1;
    s.times.reserve(m - from);
    s.values.reserve(m - from);
    s.degenerate.reserve(m - from);
    for (std::size_t j = from; j < m; ++j) {
        const VelocityEstimate est =
            instantaneous_velocity(traj.samples[j], traj.samples[j + 1], positions, dt);
        s.times.push_back(traj.samples[j].t);
        s.values.push_back(est.c);
        s.degenerate.push_back(est.degenerate ? 1 : 0);
    }
    return s;
}

double reference_time(const Trajectory& traj, std::span<const double> positions) {
    const std::vector<double> pos(positions.begin(), positions.end());
    const double mid = pos.back() / 2.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < traj.size(); ++j) {
        const double v = interp_profile(traj.samples[j].x, pos, mid);
        if (v == 0.0) return traj.samples[j].t;
        if (j > 0 && std::signbit(v) != std::signbit(prev)) {
            const double t0 = traj.samples[j - 1].t, t1 = traj.samples[j].t;
            return t0 + (0.0 - prev) / (v - prev) * (t1 - t0);
        }
        prev = v;
    }
    throw PropagationError("profile never crosses zero at mid-domain");
}

std::size_t first_crossing_index(const Trajectory& traj, std::span<const double> positions,
                                 double position) {
    const std::vector<double> pos(positions.begin(), positions.end());
    if (traj.size() == 0) return 0;
    const double v0 = interp_profile(traj.samples[0].x, pos, position);
    if (v0 == 0.0) return 0;
    for (std::size_t j = 1; j < traj.size(); ++j) {
        const double v = interp_profile(traj.samples[j].x, pos, position);
        if (v == 0.0 || std::signbit(v) != std::signbit(v0)) return j;
    }
    return traj.size();
}

ShapeResidualSeries shape_residual(const Trajectory& traj, std::span<const double> positions,
                                   std::span<const double> weights, double t_J, Frame frame,
                                   std::size_t from) {
    ShapeResidualSeries s;
    s.frame = frame;
    if (traj.size() <= from) return s;
    const double dt = traj.config.sample_dt;
    // Residuals compare whole samples; snap the reference to the nearest one.
    std::size_t J = static_cast<std::size_t>(
        std::clamp(std::llround(t_J / dt), 0LL, static_cast<long long>(traj.size() - 1)));
    s.reference_time = traj.samples[J].t;
    const std::vector<double>& ref = traj.samples[J].x;
    const std::vector<double> pos = normalized(positions);
    s.times.reserve(traj.size() - from);
    s.values.reserve(traj.size() - from);
    for (std::size_t j = from; j < traj.size(); ++j) {
        const ShiftFit fit = fit_shift(ref, traj.samples[j].x, pos, weights, -1.0, 1.0);
        s.times.push_back(traj.samples[j].t);
        s.values.push_back(fit.value);
    }
    return s;
}

SpeedMeasurement measure_asymptotic_speed(const PathwaySpec& spec,
                                          const IntegratorConfig& config) {
    spec.validate();
    if (!spec.is_uniform())
        throw DomainError("asymptotic speed is defined for uniform pathways");
    const EquilibriumSet eq = classify(spec.edges[0]);
    if (eq.region != Region::Bistable || eq.degenerate)
        throw PropagationError("no sustained propagation: parameters outside the bistable window");
    if (!spec.uniform_initial || std::abs(*spec.uniform_initial) != 1.0)
        throw DomainError("asymptotic speed requires a uniform initial state at -1 or +1");
    if (spec.boundary_input != -*spec.uniform_initial)
        throw DomainError("boundary input must sit at the stable state opposite the initial one");

    IntegratorConfig cfg = config;
    cfg.stop_on_arrival = true;
    const Trajectory traj = integrate(spec, cfg);
    if (!traj.arrival_time)
        throw PropagationError("no sustained propagation: terminal node undisturbed by t_end");

    const double dt = cfg.sample_dt;
    const long long last = static_cast<long long>(traj.size()) - 2;
    const long long k =
        std::clamp(std::llround(*traj.arrival_time / 2.0 / dt), 0LL, std::max(0LL, last));
    const std::vector<double> pos = original_positions(spec.n());
    const VelocityEstimate est = instantaneous_velocity(
        traj.samples[static_cast<std::size_t>(k)], traj.samples[static_cast<std::size_t>(k) + 1],
        pos, dt);
    return {est.c, *traj.arrival_time};
}

double asymptotic_speed(const PathwaySpec& spec, const IntegratorConfig& config) {
    return measure_asymptotic_speed(spec, config).speed;
}

std::vector<double> original_positions(std::size_t n) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(i + 1);
    return p;
}

} // namespace pathwave
