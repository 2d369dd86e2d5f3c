#include "pathwave/model.hpp"

#include <cmath>
#include <string>

namespace pathwave {

namespace {

void check_node_domain(double x, const char* name) {
    if (!(std::abs(x) <= 1.0 + kDomainTol))
        throw DomainError(std::string(name) + " = " + std::to_string(x) +
                          " outside the node domain [-1, 1]");
}

} // namespace

void EdgeParams::validate() const {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (!(beta > 1.0)) throw DomainError("beta must exceed 1");
    if (!(phi >= -1.0 && phi <= 1.0)) throw DomainError("phi must lie in [-1, 1]");
}

bool PathwaySpec::is_uniform() const {
    for (const auto& e : edges)
        if (e.alpha != edges[0].alpha || e.beta != edges[0].beta || e.phi != edges[0].phi)
            return false;
    return true;
}

std::vector<double> PathwaySpec::initial_state() const {
    if (uniform_initial) return std::vector<double>(n(), *uniform_initial);
    return initial_values;
}

void PathwaySpec::validate() const {
    if (n() < 2) throw DomainError("pathway length must be at least 2");
    for (const auto& e : edges) e.validate();
    check_node_domain(boundary_input, "boundary input x0");
    if (uniform_initial) {
        check_node_domain(*uniform_initial, "initial state");
    } else {
        if (initial_values.size() != n())
            throw DomainError("explicit initial vector length does not match pathway length");
        for (double v : initial_values) check_node_domain(v, "initial state");
    }
}

PathwaySpec PathwaySpec::uniform(std::size_t n, EdgeParams p, double x0, double init) {
    PathwaySpec s;
    s.edges.assign(n, p);
    s.boundary_input = x0;
    s.uniform_initial = init;
    return s;
}

void CascadeState::validate() const {
    if (t < 0.0) throw DomainError("time must be nonnegative");
    for (double v : x) check_node_domain(v, "node state");
}

const char* to_string(Region r) {
    switch (r) {
        case Region::MonostableInactive: return "monostable_inactive";
        case Region::Bistable: return "bistable";
        case Region::MonostableActive: return "monostable_active";
    }
    return "?";
}

double edge_rhs(double upstream, double local, const EdgeParams& p) {
    check_node_domain(upstream, "upstream state");
    check_node_domain(local, "local state");
    const double ab = p.alpha * p.beta;
    const double gain = 0.25 * (1.0 + p.phi) * (1.0 + upstream) * ab * (1.0 - local) /
                        (2.0 * p.beta - (1.0 + local));
    const double loss = 0.25 * (1.0 - p.phi) * (1.0 - upstream) * ab * (1.0 + local) /
                        (2.0 * p.beta - (1.0 - local));
    return gain - loss;
}

void pathway_rhs_into(std::span<const double> x, const PathwaySpec& spec, std::span<double> out) {
    const std::size_t n = spec.n();
    double upstream = spec.boundary_input;
    for (std::size_t i = 0; i < n; ++i) {
        const EdgeParams& p = spec.edges[i];
        const double local = x[i];
        const double ab = p.alpha * p.beta;
        out[i] = 0.25 * (1.0 + p.phi) * (1.0 + upstream) * ab * (1.0 - local) /
                     (2.0 * p.beta - (1.0 + local)) -
                 0.25 * (1.0 - p.phi) * (1.0 - upstream) * ab * (1.0 + local) /
                     (2.0 * p.beta - (1.0 - local));
        upstream = local;
    }
}

std::vector<double> pathway_rhs(const CascadeState& state, const PathwaySpec& spec) {
    if (state.x.size() != spec.n())
        throw DomainError("state dimension does not match pathway length");
    state.validate();
    std::vector<double> out(spec.n());
    pathway_rhs_into(state.x, spec, out);
    return out;
}

double uniform_rhs(double x, const EdgeParams& p) {
    check_node_domain(x, "state");
    const double B = p.B();
    return p.alpha * p.beta * (1.0 - x * x) * (x + p.phi * B) / (2.0 * (B * B - x * x));
}

EquilibriumSet classify(const EdgeParams& p) {
    p.validate();
    EquilibriumSet eq;
    eq.phi_c = p.phi_c();
    if (p.phi < -eq.phi_c) {
        eq.region = Region::MonostableInactive;
        eq.stable = {-1.0};
        eq.unstable = {+1.0};
    } else if (p.phi > eq.phi_c) {
        eq.region = Region::MonostableActive;
        eq.stable = {+1.0};
        eq.unstable = {-1.0};
    } else {
        eq.region = Region::Bistable;
        eq.stable = {-1.0, +1.0};
        if (p.phi == eq.phi_c || p.phi == -eq.phi_c) {
            // Transcritical point: xi collides with a boundary equilibrium.
            eq.degenerate = true;
            eq.xi = (p.phi > 0.0) ? -1.0 : +1.0;
        } else {
            eq.xi = p.xi();
        }
        eq.unstable = {*eq.xi};
    }
    return eq;
}

} // namespace pathwave
