#ifndef PATHWAVE_MODEL_HPP
#define PATHWAVE_MODEL_HPP

#include <optional>
#include <span>
#include <vector>

#include "pathwave/errors.hpp"

namespace pathwave {

// Tolerance for the node-state domain check |x| <= 1. Adaptive integrators
// overshoot by rounding noise; hard rejection at exactly 1 causes spurious
// failures.
inline constexpr double kDomainTol = 1e-9;

/// Kinetic parameters of one edge: timescale alpha (> 0), saturation beta
/// (> 1) and activation bias phi in [-1, 1].
struct EdgeParams {
    double alpha = 1.0;
    double beta = 1.5;
    double phi = 0.0;

    // Saturation parameter in the B = 2*beta - 1 convention, B > 1.
    double B() const { return 2.0 * beta - 1.0; }
    // Critical bias bounding the bistable window.
    double phi_c() const { return 1.0 / B(); }
    // Interior equilibrium of the uniform dynamics (may fall outside [-1, 1]).
    double xi() const { return -phi * B(); }

    void validate() const;
};

/// A feed-forward chain of N edges plus the constant boundary input x_0 and
/// the initial node states (a uniform resting level or an explicit vector).
struct PathwaySpec {
    std::vector<EdgeParams> edges;
    double boundary_input = 1.0;
    std::optional<double> uniform_initial = -1.0; // set iff initial state is uniform
    std::vector<double> initial_values;           // used when uniform_initial is empty

    std::size_t n() const { return edges.size(); }
    bool is_uniform() const;
    std::vector<double> initial_state() const;
    void validate() const;

    static PathwaySpec uniform(std::size_t n, EdgeParams p, double x0, double init);
};

/// Node states at one instant.
struct CascadeState {
    double t = 0.0;
    std::vector<double> x;

    void validate() const;
};

enum class Region {
    MonostableInactive, // phi < -phi_c: only x = -1 attracts
    Bistable,           // |phi| <= phi_c: x = -1 and x = +1 coexist
    MonostableActive,   // phi > phi_c: only x = +1 attracts
};

const char* to_string(Region r);

/// Equilibria of the uniform dynamics and their stability.
struct EquilibriumSet {
    Region region;
    std::vector<double> stable;
    std::vector<double> unstable;
    std::optional<double> xi; // interior equilibrium, present iff bistable
    double phi_c;
    bool degenerate = false; // phi sits exactly on +/-phi_c
};

/// Rate of change of a node at `local` driven by its upstream neighbour.
double edge_rhs(double upstream, double local, const EdgeParams& p);

/// Componentwise rates for the whole cascade; node 1 sees the boundary input.
std::vector<double> pathway_rhs(const CascadeState& state, const PathwaySpec& spec);
void pathway_rhs_into(std::span<const double> x, const PathwaySpec& spec, std::span<double> out);

/// Rate of the uniform reduction dx/dt = f(x, x).
double uniform_rhs(double x, const EdgeParams& p);

/// Classify the dynamical regime of uniform parameters.
EquilibriumSet classify(const EdgeParams& p);

} // namespace pathwave

#endif
