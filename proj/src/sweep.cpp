#include "pathwave/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "pathwave/rng.hpp"

namespace pathwave {

PathwaySpec build_gradient(const GradientSpec& g) {
    if (g.n < 2) throw DomainError("gradient pathway needs at least 2 edges");
    PathwaySpec spec;
    spec.edges.resize(g.n);
    const double denom = static_cast<double>(g.n - 1);
    switch (g.kind) {
        case GradientSpec::Kind::AlphaLinear:
            if (!(g.lo > 0.0) || !(g.hi > 0.0))
                throw DomainError("alpha endpoints must be positive");
            for (std::size_t i = 0; i < g.n; ++i) {
                spec.edges[i] = g.base;
                spec.edges[i].alpha = g.lo + (g.hi - g.lo) * static_cast<double>(i) / denom;
            }
            break;
        case GradientSpec::Kind::BLog: {
            if (!(g.lo > 1.0) || !(g.hi > 1.0))
                throw DomainError("B endpoints must exceed 1");
            const double llo = std::log(g.lo - 1.0), lhi = std::log(g.hi - 1.0);
            for (std::size_t i = 0; i < g.n; ++i) {
                const double B =
                    1.0 + std::exp(llo + (lhi - llo) * static_cast<double>(i) / denom);
                spec.edges[i] = g.base;
                spec.edges[i].beta = (B + 1.0) / 2.0;
            }
            break;
        }
        case GradientSpec::Kind::PhiLinear: {
            const double phi_c = g.base.phi_c();
            for (std::size_t i = 0; i < g.n; ++i) {
                const double phi = g.lo + (g.hi - g.lo) * static_cast<double>(i) / denom;
                if (!(std::abs(phi) < phi_c))
                    throw DomainError("phi gradient leaves the bistable window |phi| < " +
                                      std::to_string(phi_c));
                spec.edges[i] = g.base;
                spec.edges[i].phi = phi;
            }
            break;
        }
    }
    spec.boundary_input = 1.0;
    spec.uniform_initial = -1.0;
    spec.validate();
    return spec;
}

void StochasticEnsembleSpec::validate() const {
    if (!(alpha0 > 0.0)) throw DomainError("alpha0 must be positive");
    if (!(beta0 > 1.0)) throw DomainError("beta0 must exceed 1");
    if (!(sigma >= 0.0)) throw DomainError("sigma must be nonnegative");
    if (!(phi >= -1.0 && phi <= 1.0)) throw DomainError("phi must lie in [-1, 1]");
    if (n < 2) throw DomainError("pathway length must be at least 2");
}

PathwaySpec sample_realization(const StochasticEnsembleSpec& s, std::size_t k) {
    s.validate();
    PathwaySpec spec;
    spec.edges.resize(s.n);
    const std::uint64_t base = mix_key(s.seed, k);
    for (std::size_t i = 0; i < s.n; ++i) {
        const std::uint64_t ki = mix_key(base, i);
        const double z_alpha = normal_from_key(mix_key(ki, 0));
        const double z_beta = normal_from_key(mix_key(ki, 1));
        spec.edges[i].alpha = s.alpha0 * std::exp(s.sigma * z_alpha);
        spec.edges[i].beta = 1.0 + (s.beta0 - 1.0) * std::exp(s.sigma * z_beta);
        spec.edges[i].phi = s.phi;
    }
    spec.boundary_input = 1.0;
    spec.uniform_initial = -1.0;
    return spec;
}

namespace {

struct Windowed {
    const std::vector<double>* times;
    const std::vector<double>* values;
    std::size_t from;
};

double trapezoid(const Windowed& w, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (std::size_t j = w.from + 1; j < w.times->size(); ++j)
        acc += 0.5 * ((*w.times)[j] - (*w.times)[j - 1]) *
               (f((*w.values)[j]) + f((*w.values)[j - 1]));
    return acc;
}

void require_window(const Windowed& w, const char* what) {
    if (w.times->size() < w.from + 3)
        throw DomainError(std::string(what) + " window holds fewer than 3 samples");
}

} // namespace

double vise(const VelocitySeries& series) {
    Windowed w{&series.times, &series.values, series.valid_from};
    require_window(w, "velocity");
    const double span = series.times.back() - series.times[series.valid_from];
    const double mean = trapezoid(w, [](double v) { return v; }) / span;
    return trapezoid(w, [mean](double v) { return (v - mean) * (v - mean); });
}

double rise(const ShapeResidualSeries& series) {
    Windowed w{&series.times, &series.values, series.valid_from};
    require_window(w, "residual");
    return trapezoid(w, [](double r) { return r * r; });
}

namespace {

std::string stalled_range(const Trajectory& traj) {
    const std::vector<double> x0 = traj.spec.initial_state();
    const std::vector<double>& xe = traj.samples.back().x;
    std::size_t first = traj.spec.n();
    for (std::size_t i = 0; i < traj.spec.n(); ++i) {
        if (std::abs(xe[i] - x0[i]) < traj.config.terminal_threshold) {
            first = i;
            break;
        }
    }
    if (first == traj.spec.n()) return "terminal node only";
    return "nodes " + std::to_string(first + 1) + ".." + std::to_string(traj.spec.n());
}

} // namespace

ComparisonResult run_comparison(const PathwaySpec& spec, const SpeedOracle& oracle,
                                const IntegratorConfig& config, bool full_series) {
    spec.validate();
    ComparisonResult res;
    res.coords = rescale(spec, oracle);

    IntegratorConfig cfg = config;
    cfg.stop_on_arrival = true;
    res.trajectory = integrate(spec, cfg);
    const Trajectory& traj = res.trajectory;
    if (!traj.arrival_time)
        throw PropagationError("propagation stalled before the terminal node (" +
                               stalled_range(traj) + " undisturbed at t_end)");

    const std::size_t n = spec.n();
    const std::vector<double> pos_orig = original_positions(n);
    const std::vector<double> pos_resc = res.coords.node_positions();
    const double dt = cfg.sample_dt;

    // Both frames share the post-transient window: metrics count only after
    // the wave passes s = 0.15, and the run already halts at arrival.
    const std::size_t j_start = first_crossing_index(traj, pos_resc, 0.15);
    if (j_start >= traj.size())
        throw PropagationError("wave never crossed s = 0.15");
    res.window_start = traj.samples[j_start].t;
    res.window_end = *traj.arrival_time;

    const std::size_t pairs = traj.size() - 1;
    // Fits are the dominant cost; series start at the window unless the full
    // transient was requested.
    const std::size_t v_from = full_series ? 0 : std::min(j_start, pairs - 1);
    const std::size_t r_from = full_series ? 0 : j_start;
    // Both frames span a unit normalized domain, so the reported velocities
    // (c_j / N and c~_j) share one scale factor.
    const double scale_orig = (pos_orig.back() / static_cast<double>(n)) / dt;
    const double scale_resc = pos_resc.back() / dt;

    auto make_series = [&](const std::vector<double>& pos, double scale, Frame frame) {
        VelocitySeries s;
        s.frame = frame;
        s.valid_from = std::min(j_start, pairs - 1) - v_from;
        s.times.reserve(pairs - v_from);
        s.values.reserve(pairs - v_from);
        s.degenerate.reserve(pairs - v_from);
        for (std::size_t j = v_from; j < pairs; ++j) {
            const VelocityEstimate est =
                instantaneous_velocity(traj.samples[j], traj.samples[j + 1], pos, dt);
            s.times.push_back(traj.samples[j].t);
            s.values.push_back(est.shift_fraction * scale);
            s.degenerate.push_back(est.degenerate ? 1 : 0);
        }
        return s;
    };
    res.original.velocity = make_series(pos_orig, scale_orig, Frame::Original);
    res.rescaled.velocity = make_series(pos_resc, scale_resc, Frame::Rescaled);

    // One reference time for both frames, defined on the normalized profile.
    const double t_J = reference_time(traj, pos_resc);
    const std::vector<double> w_orig(n, 1.0 / static_cast<double>(n));
    res.original.residual =
        shape_residual(traj, pos_orig, w_orig, t_J, Frame::Original, r_from);
    res.rescaled.residual =
        shape_residual(traj, pos_resc, res.coords.ds, t_J, Frame::Rescaled, r_from);
    res.original.residual.valid_from = std::min(j_start, traj.size() - 1) - r_from;
    res.rescaled.residual.valid_from = res.original.residual.valid_from;

    res.original.vise = vise(res.original.velocity);
    res.rescaled.vise = vise(res.rescaled.velocity);
    res.original.rise = rise(res.original.residual);
    res.rescaled.rise = rise(res.rescaled.residual);
    return res;
}

double quantile(std::vector<double> v, double p) {
    if (v.empty()) throw DomainError("quantile of an empty sample");
    std::sort(v.begin(), v.end());
    const double h = p * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (h - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

Quartiles quartiles(const std::vector<double>& v) {
    return {quantile(v, 0.5), quantile(v, 0.25), quantile(v, 0.75)};
}

SweepSummary sweep(const StochasticEnsembleSpec& s, const std::vector<double>& sigma_grid,
                   const SpeedOracle& oracle, const IntegratorConfig& config,
                   std::size_t threads) {
    s.validate();
    for (double sg : sigma_grid)
        if (!(sg >= 0.0 && sg <= 1.0)) throw DomainError("sigma grid must lie within [0, 1]");

    SweepSummary out;
    out.sigma_grid = sigma_grid;

    struct Slot {
        bool included = false;
        double vo = 0.0, vr = 0.0, ro = 0.0, rr = 0.0;
        double amin = 0.0, amax = 0.0, bmin = 0.0, bmax = 0.0;
    };

    for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
        StochasticEnsembleSpec sub = s;
        sub.sigma = sigma_grid[si];
        sub.seed = mix_key(s.seed, si);

        std::vector<Slot> slots(s.realizations);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k >= s.realizations) break;
                const PathwaySpec spec = sample_realization(sub, k);
                Slot& slot = slots[k];
                slot.amin = slot.amax = spec.edges[0].alpha;
                slot.bmin = slot.bmax = spec.edges[0].beta;
                for (const auto& e : spec.edges) {
                    slot.amin = std::min(slot.amin, e.alpha);
                    slot.amax = std::max(slot.amax, e.alpha);
                    slot.bmin = std::min(slot.bmin, e.beta);
                    slot.bmax = std::max(slot.bmax, e.beta);
                }
                try {
                    const ComparisonResult r = run_comparison(spec, oracle, config);
                    slot.vo = r.original.vise;
                    slot.vr = r.rescaled.vise;
                    slot.ro = r.original.rise;
                    slot.rr = r.rescaled.rise;
                    slot.included = true;
                } catch (const PropagationError&) {
                    slot.included = false; // fragmented pathway, tallied below
                }
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        std::vector<double> vo, vr, ro, rr;
        double amin = 0.0, amax = 0.0, bmin = 0.0, bmax = 0.0;
        std::size_t excluded = 0;
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const Slot& slot = slots[k];
            amin += slot.amin;
            amax += slot.amax;
            bmin += slot.bmin;
            bmax += slot.bmax;
            if (slot.included) {
                vo.push_back(slot.vo);
                vr.push_back(slot.vr);
                ro.push_back(slot.ro);
                rr.push_back(slot.rr);
            } else {
                ++excluded;
            }
            out.details.push_back({si, k, slot.included, slot.vo, slot.vr, slot.ro, slot.rr});
        }
        if (2 * excluded > s.realizations)
            throw PropagationError("more than half the realizations failed to propagate at "
                                   "sigma = " +
                                   std::to_string(sub.sigma));
        const double nr = static_cast<double>(s.realizations);
        out.vise_original.push_back(quartiles(vo));
        out.vise_rescaled.push_back(quartiles(vr));
        out.rise_original.push_back(quartiles(ro));
        out.rise_rescaled.push_back(quartiles(rr));
        out.alpha_mean_min.push_back(amin / nr);
        out.alpha_mean_max.push_back(amax / nr);
        out.beta_mean_min.push_back(bmin / nr);
        out.beta_mean_max.push_back(bmax / nr);
        out.excluded.push_back(excluded);
    }
    return out;
}

SpeedOracle make_sweep_oracle(const StochasticEnsembleSpec& s,
                              const std::vector<double>& sigma_grid,
                              const SpeedOracle::MeasureConfig& cfg, std::size_t b_points,
                              std::size_t threads) {
    // Presample every realization to size the table, then build it once; the
    // sweep itself only reads it.
    double bmin = s.beta0, bmax = s.beta0;
    for (std::size_t si = 0; si < sigma_grid.size(); ++si) {
        StochasticEnsembleSpec sub = s;
        sub.sigma = sigma_grid[si];
        sub.seed = mix_key(s.seed, si);
        for (std::size_t k = 0; k < s.realizations; ++k) {
            const PathwaySpec spec = sample_realization(sub, k);
            for (const auto& e : spec.edges) {
                bmin = std::min(bmin, e.beta);
                bmax = std::max(bmax, e.beta);
            }
        }
    }
    const double lo = (2.0 * bmin - 2.0) / 1.1; // 10% margin in B - 1
    const double hi = (2.0 * bmax - 2.0) * 1.1;
    const std::size_t phi_points = (s.phi == 0.0) ? 1 : 21;
    const SpeedOracle base = SpeedOracle::exact(cfg);
    return SpeedOracle::table(
        SpeedTable::build(lo, hi, b_points, phi_points, base.measurer(), threads));
}

} // namespace pathwave
