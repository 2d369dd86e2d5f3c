#ifndef PATHWAVE_WAVE_HPP
#define PATHWAVE_WAVE_HPP

#include <span>
#include <vector>

#include "pathwave/ode.hpp"

namespace pathwave {

enum class Frame { Original, Rescaled };

struct VelocityEstimate {
    double c = 0.0;
    double shift_fraction = 0.0; // optimal shift as a fraction of the domain length
    bool degenerate = false;     // zero or flat-objective minimizer
};

/// Per-timestep velocity estimates c_j (nodes/time, Original frame) or
/// c~_j (unit-domain fraction/time, Rescaled frame).
struct VelocitySeries {
    Frame frame = Frame::Original;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<char> degenerate;
    std::size_t valid_from = 0; // first index after transient filtering
};

/// Minimal weighted squared mismatch against the reference profile at t_J.
struct ShapeResidualSeries {
    Frame frame = Frame::Original;
    std::vector<double> times;
    std::vector<double> values;
    double reference_time = 0.0;
    std::size_t valid_from = 0;
};

/// Piecewise-linear interpolation of a discrete profile, clamped to the
/// first/last node value outside the position range.
double interp_profile(std::span<const double> x, std::span<const double> positions, double q);

/// Least-squares velocity between two profiles dt apart: the shift c*dt that
/// best maps the earlier profile onto the later one.
VelocityEstimate instantaneous_velocity(const CascadeState& prev, const CascadeState& next,
                                        std::span<const double> positions, double dt);

/// c_j for every adjacent sample pair of a trajectory, starting at `from`.
VelocitySeries velocity_series(const Trajectory& traj, std::span<const double> positions,
                               Frame frame, std::size_t from = 0);

/// First time (interpolated between samples) at which the profile value at
/// mid-domain crosses zero.
double reference_time(const Trajectory& traj, std::span<const double> positions);

/// First sample index at which the interpolated profile at `position` has
/// crossed zero, or the sample count when it never does.
std::size_t first_crossing_index(const Trajectory& traj, std::span<const double> positions,
                                 double position);

/// Shape-residual series against the sample nearest t_J, starting at `from`.
ShapeResidualSeries shape_residual(const Trajectory& traj, std::span<const double> positions,
                                   std::span<const double> weights, double t_J, Frame frame,
                                   std::size_t from = 0);

struct SpeedMeasurement {
    double speed;
    double arrival_time;
};

/// Asymptotic speed protocol: integrate a uniform bistable cascade until the
/// terminal node deviates by the arrival threshold, then report c_j at the
/// sample nearest half the propagation time.
SpeedMeasurement measure_asymptotic_speed(const PathwaySpec& spec, const IntegratorConfig& config);
double asymptotic_speed(const PathwaySpec& spec, const IntegratorConfig& config);

/// Node positions 1..N of the original frame.
std::vector<double> original_positions(std::size_t n);

} // namespace pathwave

#endif
