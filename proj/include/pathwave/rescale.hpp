#ifndef PATHWAVE_RESCALE_HPP
#define PATHWAVE_RESCALE_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pathwave/ode.hpp"

namespace pathwave {

/// Precomputed speed grid over (ln(B - 1), phi/phi_c), interpolated
/// bilinearly. The phi axis is stored as fractions of the critical bias so a
/// single rectangular grid spans every B's admissible window.
struct SpeedTable {
    std::vector<double> logb_grid;     // ln(B - 1), ascending
    std::vector<double> phi_frac_grid; // phi / phi_c(B), ascending, inside (-1, 1)
    std::vector<double> speeds;        // row-major [logb][phi_frac]

    double lookup(double B, double phi) const; // throws DomainError out of range
    bool covers(double B, double phi) const;

    std::string to_json() const;
    static SpeedTable from_json(const std::string& text);

    static SpeedTable build(double b_minus1_lo, double b_minus1_hi, std::size_t b_points,
                            std::size_t phi_points,
                            const std::function<double(double, double)>& measure,
                            std::size_t threads = 1);
};

/// Source of homogeneous-pathway base speeds c(1, B, phi). Exact mode runs
/// one wave simulation per distinct (B, phi) and caches it; Table mode
/// interpolates a precomputed grid.
class SpeedOracle {
public:
    enum class Mode { Exact, Table };

    struct MeasureConfig {
        std::size_t pathway_length = 200;
        IntegratorConfig integrator{1e-8, 1e-10, 1.0, 2e5, 1e-4, true};
    };

    static SpeedOracle exact();
    static SpeedOracle exact(MeasureConfig cfg);
    static SpeedOracle table(SpeedTable t);
    // Exact-mode oracle with a custom measurement function (testing hook).
    static SpeedOracle with_measurer(std::function<double(double, double)> fn);

    SpeedOracle(SpeedOracle&&) = default;
    SpeedOracle& operator=(SpeedOracle&&) = default;

    Mode mode() const { return mode_; }
    const MeasureConfig& measure_config() const { return cfg_; }
    const SpeedTable& speed_table() const { return table_; }

    /// Base speed c(1, B, phi); cached per quantized (B, phi) key.
    double base_speed(double B, double phi) const;

    std::function<double(double, double)> measurer() const;

private:
    SpeedOracle() = default;
    Mode mode_ = Mode::Exact;
    MeasureConfig cfg_;
    SpeedTable table_;
    std::function<double(double, double)> measure_;
    mutable std::map<std::pair<std::string, std::string>, double> cache_;
    mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

/// Rescaled node coordinates: s_0 = 0, s_N = 1, with per-edge spans inversely
/// proportional to the edge's homogeneous wave speed.
struct RescaledCoordinates {
    std::vector<double> s;      // N+1 values, s[0] = 0, s[N] = 1
    std::vector<double> ds;     // N spans, ds[i] = s[i+1] - s[i]
    std::vector<double> speeds; // per-edge c(alpha_i, B_i, phi_i)
    double c_bar = 0.0;         // harmonic normalizer

    std::vector<double> node_positions() const; // s_1 .. s_N
};

/// Homogeneous-pathway speed the wave would have on edge p alone.
double edge_speed(const EdgeParams& p, const SpeedOracle& oracle);

/// Coordinates from explicit per-edge speeds.
RescaledCoordinates rescale_from_speeds(const std::vector<double>& speeds);

/// Coordinates for a pathway, measuring speeds through the oracle.
RescaledCoordinates rescale(const PathwaySpec& spec, const SpeedOracle& oracle);

} // namespace pathwave

#endif
