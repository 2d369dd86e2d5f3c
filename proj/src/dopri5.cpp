#include "pathwave/dopri5.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathwave/errors.hpp"

namespace pathwave {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order weights (also the a7j row; the pair is FSAL).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - bhat, the embedded error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

// PI controller constants (Hairer's defaults for DOPRI5).
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kSafe = 0.9;
constexpr double kFacMin = 0.2, kFacMax = 10.0;
constexpr double kUround = std::numeric_limits<double>::epsilon();

} // namespace

Dopri5::Dopri5(OdeRhs rhs, std::vector<double> y0, double t0, Options opt)
    : rhs_(std::move(rhs)), n_(y0.size()), opt_(opt), t_prev_(t0), t_(t0), y_(std::move(y0)) {
    y_prev_ = y_;
    k1_.resize(n_);
    k2_.resize(n_);
    k3_.resize(n_);
    k4_.resize(n_);
    k5_.resize(n_);
    k6_.resize(n_);
    k7_.resize(n_);
    ytmp_.resize(n_);
    rc1_.resize(n_);
    rc2_.resize(n_);
    rc3_.resize(n_);
    rc4_.resize(n_);
    rc5_.resize(n_);
    rhs_(t_, y_, k1_);
}

double Dopri5::initial_step(double t_limit) {
    // Standard starting-step heuristic (HNEW of Hairer's hinit).
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
        dnf += (k1_[i] / sk) * (k1_[i] / sk);
        dny += (y_[i] / sk) * (y_[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, t_limit - t_);
    // Explicit Euler probe, then bound by the 5th-order accuracy estimate.
    for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y_[i] + h * k1_[i];
    rhs_(t_ + h, ytmp_, k2_);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
        der2 += ((k2_[i] - k1_[i]) / sk) * ((k2_[i] - k1_[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, t_limit - t_});
}

bool Dopri5::step(double t_limit) {
    if (t_ >= t_limit) return false;
    if (!have_h_) {
        h_ = initial_step(t_limit);
        have_h_ = true;
    }

    while (true) {
        if (++nsteps_ > opt_.max_steps)
            throw IntegrationError("step limit exceeded", t_);
        if (0.1 * std::abs(h_) <= std::abs(t_) * kUround)
            throw IntegrationError("step-size underflow", t_);
        bool last = false;
        if (t_ + h_ >= t_limit) {
            h_ = t_limit - t_;
            last = true;
        }

        const double h = h_;
        for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y_[i] + h * a21 * k1_[i];
        rhs_(t_ + c2 * h, ytmp_, k2_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        rhs_(t_ + c3 * h, ytmp_, k3_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        rhs_(t_ + c4 * h, ytmp_, k4_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        rhs_(t_ + c5 * h, ytmp_, k5_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                                    a65 * k5_[i]);
        rhs_(t_ + h, ytmp_, k6_);
        // 5th-order solution (stage 7 evaluates the rhs there: FSAL).
        std::vector<double>& ynew = ytmp_;
        for (std::size_t i = 0; i < n_; ++i)
            ynew[i] = y_[i] +
                      h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] + b6 * k6_[i]);
        rhs_(t_ + h, ynew, k7_);

        double err = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double sk =
                opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
            const double ei = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                                   e6 * k6_[i] + e7 * k7_[i]);
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / static_cast<double>(n_));

        const double fac11 = std::pow(std::max(err, 1e-30), kExpo1);
        if (err <= 1.0) {
            // Accepted: build dense coefficients, rotate state, grow the step.
            ++naccept_;
            facold_ = std::max(err, 1e-4);
            if (opt_.project) opt_.project(ynew);
            std::swap(y_prev_, y_);
            for (std::size_t i = 0; i < n_; ++i) {
                const double ydiff = ynew[i] - y_prev_[i];
                const double bspl = h * k1_[i] - ydiff;
                rc1_[i] = y_prev_[i];
                rc2_[i] = ydiff;
                rc3_[i] = bspl;
                rc4_[i] = ydiff - h * k7_[i] - bspl;
                rc5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] +
                               d6 * k6_[i] + d7 * k7_[i]);
            }
            y_.assign(ynew.begin(), ynew.end());
            std::swap(k1_, k7_); // FSAL
            t_prev_ = t_;
            t_ = last ? t_limit : t_ + h;
            double fac = fac11 / std::pow(facold_, kBeta);
            fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
            h_ = h / fac;
            return true;
        }
        // Rejected: shrink and retry.
        ++nreject_;
        h_ = h / std::min(1.0 / kFacMin, fac11 / kSafe);
    }
}

void Dopri5::dense_eval(double ti, std::span<double> out) const {
    const double h = t_ - t_prev_;
    const double theta = (h == 0.0) ? 0.0 : (ti - t_prev_) / h;
    const double theta1 = 1.0 - theta;
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = rc1_[i] +
                 theta * (rc2_[i] + theta1 * (rc3_[i] + theta * (rc4_[i] + theta1 * rc5_[i])));
}

std::vector<double> dopri5_fixed_step(const OdeRhs& rhs, std::vector<double> y0, double t0,
                                      double t1, double h) {
    const std::size_t n = y0.size();
    std::vector<double> y = std::move(y0), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), yt(n),
                        ynew(n);
    double t = t0;
    while (t < t1 - 1e-14 * std::max(1.0, std::abs(t1))) {
        const double hs = std::min(h, t1 - t);
        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * a21 * k1[i];
        rhs(t + c2 * hs, yt, k2);
        for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * hs, yt, k3);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * hs, yt, k4);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * hs, yt, k5);
        for (std::size_t i = 0; i < n; ++i)
            yt[i] = y[i] +
                    hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + hs, yt, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] =
                y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        y = ynew;
        t += hs;
    }
    return y;
}

} // namespace pathwave
