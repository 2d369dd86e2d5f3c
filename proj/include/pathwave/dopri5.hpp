#ifndef PATHWAVE_DOPRI5_HPP
#define PATHWAVE_DOPRI5_HPP

#include <functional>
#include <span>
#include <vector>

namespace pathwave {

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Adaptive Dormand-Prince 5(4) stepper with PI step-size control and the
// pair's standard 4th-order continuous extension, after Hairer, Norsett &
// Wanner, "Solving Ordinary Differential Equations I" (DOPRI5).
class Dopri5 {
public:
    struct Options {
        double rel_tol = 1e-8;
        double abs_tol = 1e-10;
        long max_steps = 100'000'000;
        // Applied to each accepted state, e.g. projection onto an invariant
        // region within the error band.
        std::function<void(std::span<double>)> project;
    };

    Dopri5(OdeRhs rhs, std::vector<double> y0, double t0, Options opt);

    // Advance by one accepted step (at most to t_limit). Returns false when
    // already at t_limit. Throws IntegrationError on step-size underflow.
    bool step(double t_limit);

    double t_prev() const { return t_prev_; }
    double t() const { return t_; }
    std::span<const double> y() const { return y_; }

    // Evaluate the dense interpolant of the last accepted step at time ti,
    // t_prev() <= ti <= t().
    void dense_eval(double ti, std::span<double> out) const;

    long n_accepted() const { return naccept_; }
    long n_rejected() const { return nreject_; }

private:
    void prepare_dense();
    double initial_step(double t_limit);

    OdeRhs rhs_;
    std::size_t n_;
    Options opt_;
    double t_prev_ = 0.0, t_ = 0.0, h_ = 0.0, facold_ = 1e-4;
    bool have_h_ = false;
    long naccept_ = 0, nreject_ = 0, nsteps_ = 0;
    std::vector<double> y_, y_prev_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_;
    std::vector<double> rc1_, rc2_, rc3_, rc4_, rc5_; // dense-output coefficients
};

// Fixed-step driver over the same tableau (propagates the 5th-order result),
// used for convergence-order diagnostics.
std::vector<double> dopri5_fixed_step(const OdeRhs& rhs, std::vector<double> y0, double t0,
                                      double t1, double h);

} // namespace pathwave

#endif
