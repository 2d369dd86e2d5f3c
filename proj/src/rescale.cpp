#include "pathwave/rescale.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "pathwave/wave.hpp"

namespace pathwave {

namespace {

std::string quantize12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::size_t bracket(const std::vector<double>& grid, double v) {
    // Index of the left grid node of the cell containing v (grid ascending).
    const auto it = std::upper_bound(grid.begin(), grid.end(), v);
    const std::size_t k = static_cast<std::size_t>(it - grid.begin());
    if (k == 0) return 0;
    return std::min(k - 1, grid.size() - 2);
}

} // namespace

double SpeedTable::lookup(double B, double phi) const {
    if (!covers(B, phi))
        throw DomainError("speed table does not cover B = " + std::to_string(B) +
                          ", phi = " + std::to_string(phi));
    const double lb = std::log(B - 1.0);
    const double pf = phi * B; // phi / phi_c(B)
    const std::size_t np = phi_frac_grid.size();
    auto value = [&](std::size_t ib, std::size_t ip) { return speeds[ib * np + ip]; };

    if (logb_grid.size() == 1 && np == 1) return value(0, 0);
    if (logb_grid.size() == 1) {
        const std::size_t ip = bracket(phi_frac_grid, pf);
        const double w = (pf - phi_frac_grid[ip]) / (phi_frac_grid[ip + 1] - phi_frac_grid[ip]);
        return value(0, ip) + w * (value(0, ip + 1) - value(0, ip));
    }
    if (np == 1) {
        const std::size_t ib = bracket(logb_grid, lb);
        const double w = (lb - logb_grid[ib]) / (logb_grid[ib + 1] - logb_grid[ib]);
        return value(ib, 0) + w * (value(ib + 1, 0) - value(ib, 0));
    }
    const std::size_t ib = bracket(logb_grid, lb);
    const std::size_t ip = bracket(phi_frac_grid, pf);
    const double wb = (lb - logb_grid[ib]) / (logb_grid[ib + 1] - logb_grid[ib]);
    const double wp = (pf - phi_frac_grid[ip]) / (phi_frac_grid[ip + 1] - phi_frac_grid[ip]);
    const double lo = value(ib, ip) + wp * (value(ib, ip + 1) - value(ib, ip));
    const double hi = value(ib + 1, ip) + wp * (value(ib + 1, ip + 1) - value(ib + 1, ip));
    return lo + wb * (hi - lo);
}

bool SpeedTable::covers(double B, double phi) const {
    if (logb_grid.empty() || phi_frac_grid.empty()) return false;
    const double lb = std::log(B - 1.0);
    const double pf = phi * B;
    const double tol = 1e-12;
    if (logb_grid.size() == 1) {
        if (std::abs(lb - logb_grid[0]) > 1e-9) return false;
    } else if (lb < logb_grid.front() - tol || lb > logb_grid.back() + tol) {
        return false;
    }
    if (phi_frac_grid.size() == 1) {
        if (std::abs(pf - phi_frac_grid[0]) > 1e-9) return false;
    } else if (pf < phi_frac_grid.front() - tol || pf > phi_frac_grid.back() + tol) {
        return false;
    }
    return true;
}

std::string SpeedTable::to_json() const {
    nlohmann::json j;
    j["logB_grid"] = logb_grid;
    j["phi_grid"] = phi_frac_grid; // fractions of phi_c(B)
    j["speeds"] = speeds;
    return j.dump(2);
}

SpeedTable SpeedTable::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SpeedTable t;
    t.logb_grid = j.at("logB_grid").get<std::vector<double>>();
    t.phi_frac_grid = j.at("phi_grid").get<std::vector<double>>();
    t.speeds = j.at("speeds").get<std::vector<double>>();
    if (t.speeds.size() != t.logb_grid.size() * t.phi_frac_grid.size())
        throw ConfigError("speed table dimensions do not match the speeds array");
    return t;
}

SpeedTable SpeedTable::build(double b_minus1_lo, double b_minus1_hi, std::size_t b_points,
                             std::size_t phi_points,
                             const std::function<double(double, double)>& measure,
                             std::size_t threads) {
    if (!(b_minus1_lo > 0.0) || b_minus1_hi < b_minus1_lo)
        throw DomainError("speed table needs 0 < B-1 range");
    SpeedTable t;
    if (b_minus1_hi == b_minus1_lo || b_points == 1) {
        t.logb_grid = {std::log(b_minus1_lo)};
    } else {
        t.logb_grid.resize(b_points);
        const double lo = std::log(b_minus1_lo), hi = std::log(b_minus1_hi);
        for (std::size_t i = 0; i < b_points; ++i)
            t.logb_grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(b_points - 1);
    }
    if (phi_points <= 1) {
        t.phi_frac_grid = {0.0};
    } else {
        // Endpoints excluded: speeds stall/diverge at the bifurcation.
        const double margin = 0.97;
        t.phi_frac_grid.resize(phi_points);
        for (std::size_t i = 0; i < phi_points; ++i)
            t.phi_frac_grid[i] = -margin + 2.0 * margin * static_cast<double>(i) /
                                               static_cast<double>(phi_points - 1);
    }

    const std::size_t nb = t.logb_grid.size(), np = t.phi_frac_grid.size();
    t.speeds.assign(nb * np, 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= nb * np) break;
            const double B = 1.0 + std::exp(t.logb_grid[k / np]);
            const double phi = t.phi_frac_grid[k % np] / B;
            t.speeds[k] = measure(B, phi);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return t;
}

SpeedOracle SpeedOracle::exact() { return exact(MeasureConfig{}); }

SpeedOracle SpeedOracle::exact(MeasureConfig cfg) {
    SpeedOracle o;
    o.mode_ = Mode::Exact;
    o.cfg_ = cfg;
    o.measure_ = [cfg](double B, double phi) {
        EdgeParams p{1.0, (B + 1.0) / 2.0, phi};
        const PathwaySpec spec = PathwaySpec::uniform(cfg.pathway_length, p, 1.0, -1.0);
        return asymptotic_speed(spec, cfg.integrator);
    };
    return o;
}

SpeedOracle SpeedOracle::table(SpeedTable t) {
    SpeedOracle o;
    o.mode_ = Mode::Table;
    o.table_ = std::move(t);
    return o;
}

SpeedOracle SpeedOracle::with_measurer(std::function<double(double, double)> fn) {
    SpeedOracle o;
    o.mode_ = Mode::Exact;
    o.measure_ = std::move(fn);
    return o;
}

double SpeedOracle::base_speed(double B, double phi) const {
    if (mode_ == Mode::Table) return table_.lookup(B, phi);
    const auto key = std::make_pair(quantize12(B), quantize12(phi));
    {
        std::lock_guard lock(*mutex_);
        const auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const double c = measure_(B, phi); // duplicate concurrent computes allowed
    std::lock_guard lock(*mutex_);
    cache_[key] = c;
    return c;
}

std::function<double(double, double)> SpeedOracle::measurer() const {
    return measure_;
}

std::vector<double> RescaledCoordinates::node_positions() const {
    return std::vector<double>(s.begin() + 1, s.end());
}

double edge_speed(const EdgeParams& p, const SpeedOracle& oracle) {
    p.validate();
    const EquilibriumSet eq = classify(p);
    if (eq.region != Region::Bistable || eq.degenerate)
        throw PropagationError("no homogeneous traveling wave exists for this edge (phi = " +
                               std::to_string(p.phi) + ", B = " + std::to_string(p.B()) + ")");
    // Speed scales linearly with alpha, so one base measurement serves every
    // alpha at the same (B, phi).
    return p.alpha * oracle.base_speed(p.B(), p.phi);
}

RescaledCoordinates rescale_from_speeds(const std::vector<double>& speeds) {
    const std::size_t n = speeds.size();
    if (n == 0) throw DomainError("no edges to rescale");
    for (double c : speeds)
        if (!(c > 0.0)) throw DomainError("edge speeds must be positive");

    RescaledCoordinates rc;
    rc.speeds = speeds;
    rc.ds.resize(n);
    rc.s.assign(n + 1, 0.0);

    const bool uniform = std::all_of(speeds.begin(), speeds.end(),
                                     [&](double c) { return c == speeds[0]; });
    if (uniform) {
        // Equal speeds have the exact closed form ds = 1/N, s_i = i/N.
        const double nn = static_cast<double>(n);
        rc.c_bar = speeds[0] / nn;
        for (std::size_t i = 0; i < n; ++i) {
            rc.ds[i] = 1.0 / nn;
            rc.s[i + 1] = static_cast<double>(i + 1) / nn;
        }
        rc.s[n] = 1.0;
        return rc;
    }

    // Harmonic normalizer via compensated summation.
    double sum = 0.0, comp = 0.0;
    for (double c : speeds) {
        const double term = 1.0 / c - comp;
        const double t = sum + term;
        comp = (t - sum) - term;
        sum = t;
    }
    rc.c_bar = 1.0 / sum;

    double run = 0.0, rcomp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rc.ds[i] = rc.c_bar / speeds[i];
        const double term = rc.ds[i] - rcomp;
        const double t = run + term;
        rcomp = (t - run) - term;
        run = t;
        rc.s[i + 1] = t;
    }
    // Absorb residual rounding into the final span so s_N is exactly 1.
    rc.ds[n - 1] += 1.0 - rc.s[n];
    rc.s[n] = 1.0;
    return rc;
}

RescaledCoordinates rescale(const PathwaySpec& spec, const SpeedOracle& oracle) {
    spec.validate();
    std::vector<double> speeds(spec.n());
    for (std::size_t i = 0; i < spec.n(); ++i) {
        try {
            speeds[i] = edge_speed(spec.edges[i], oracle);
        } catch (const PropagationError& e) {
            throw PropagationError("edge " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return rescale_from_speeds(speeds);
}

} // namespace pathwave
