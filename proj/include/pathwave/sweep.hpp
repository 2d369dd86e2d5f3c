#ifndef PATHWAVE_SWEEP_HPP
#define PATHWAVE_SWEEP_HPP

#include <cstdint>
#include <vector>

#include "pathwave/rescale.hpp"
#include "pathwave/wave.hpp"

namespace pathwave {

/// Pathway with one kinetic parameter varied monotonically along the chain.
struct GradientSpec {
    enum class Kind { AlphaLinear, BLog, PhiLinear };
    Kind kind = Kind::AlphaLinear;
    double lo = 1.0, hi = 1.0; // endpoint values along the pathway
    EdgeParams base;           // values of the non-varied parameters
    std::size_t n = 200;
};

PathwaySpec build_gradient(const GradientSpec& g);

/// Lognormal edge-parameter ensemble: alpha_i with median alpha0 and
/// beta_i - 1 with median beta0 - 1, both at log-scale sigma.
struct StochasticEnsembleSpec {
    double alpha0 = 1.0;
    double beta0 = 5.0;
    double sigma = 0.0;
    double phi = 0.0;
    std::size_t n = 200;
    std::size_t realizations = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Realization k of the ensemble; deterministic in (seed, k, edge index).
PathwaySpec sample_realization(const StochasticEnsembleSpec& s, std::size_t k);

/// Integral square error of the velocity about its time-averaged mean, over
/// the series' valid window.
double vise(const VelocitySeries& series);

/// Integral of the squared shape residual over the series' valid window.
double rise(const ShapeResidualSeries& series);

struct FrameMetrics {
    VelocitySeries velocity;     // Original frame carries c_j / N
    ShapeResidualSeries residual;
    double vise = 0.0;
    double rise = 0.0;
};

struct ComparisonResult {
    RescaledCoordinates coords;
    Trajectory trajectory;
    FrameMetrics original;
    FrameMetrics rescaled;
    double window_start = 0.0; // wave passes s = 0.15
    double window_end = 0.0;   // terminal arrival
};

/// Integrate once and evaluate both frames' velocity and residual metrics
/// over the shared post-transient window.
ComparisonResult run_comparison(const PathwaySpec& spec, const SpeedOracle& oracle,
                                const IntegratorConfig& config, bool full_series = false);

struct Quartiles {
    double median = 0.0, q1 = 0.0, q3 = 0.0;
};

// Linear interpolation of order statistics (inclusive method).
double quantile(std::vector<double> v, double p);
Quartiles quartiles(const std::vector<double>& v);

struct SweepSummary {
    std::vector<double> sigma_grid;
    std::vector<Quartiles> vise_original, vise_rescaled, rise_original, rise_rescaled;
    std::vector<double> alpha_mean_min, alpha_mean_max, beta_mean_min, beta_mean_max;
    std::vector<std::size_t> excluded; // non-propagating realizations per sigma

    struct Detail {
        std::size_t sigma_index = 0, realization = 0;
        bool included = false;
        double vise_original = 0.0, vise_rescaled = 0.0;
        double rise_original = 0.0, rise_rescaled = 0.0;
    };
    std::vector<Detail> details;
};

/// Monte-Carlo sweep over sigma levels; realizations that never reach the
/// terminal node are excluded from the metric statistics and tallied.
SweepSummary sweep(const StochasticEnsembleSpec& s, const std::vector<double>& sigma_grid,
                   const SpeedOracle& oracle, const IntegratorConfig& config,
                   std::size_t threads = 1);

/// Table-mode oracle sized to the B values the given sweep will sample, with
/// 10% margin.
SpeedOracle make_sweep_oracle(const StochasticEnsembleSpec& s,
                              const std::vector<double>& sigma_grid,
                              const SpeedOracle::MeasureConfig& cfg, std::size_t b_points = 32,
                              std::size_t threads = 1);

} // namespace pathwave

#endif
