#ifndef ALPHAFR_GEODESICS_PROB_HPP
#define ALPHAFR_GEODESICS_PROB_HPP

#include <limits>
#include <span>
#include <vector>

#include "alphafr/grid.hpp"
#include "alphafr/metrics.hpp"

namespace alphafr {

/// Point on the chart image of the probability densities for a fixed
/// alpha != 1: a positive function f with
///   integral of f^{2/(1-alpha)}  ==  (2/|1-alpha|)^{2/(1-alpha)}.
struct SurfacePoint {
    Alpha alpha;
    GridPtr grid;
    std::vector<double> f;
};

/// Default tolerance for the surface membership constraint.
inline constexpr double kSurfaceTol = 1e-8;

/// Chart a probability density onto the surface (alpha != 1, periodic
/// grids only: the reference must be a probability density).
SurfacePoint to_surface(Alpha alpha, const Density& mu);

/// Inverse chart: h = (|1-alpha| f / 2)^{2/(1-alpha)}.
Density from_surface(const SurfacePoint& p);

/// Surface membership defect: |integral f^{2/(1-alpha)} - (2/|1-alpha|)^{2/(1-alpha)}|.
double surface_defect(const SurfacePoint& p);

/// Projection onto the tangent space of the surface along the radial
/// direction f:
///   pi(xi) = xi - (|1-alpha|/2)^{2/(1-alpha)} (integral f^{(1+alpha)/(1-alpha)} xi) f.
/// Idempotent; the result pairs to zero with f^{(1+alpha)/(1-alpha)}.
std::vector<double> radial_projection(const SurfacePoint& p, std::span<const double> xi);

struct TauControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_time = 1e3;
    /// Stop once tau reaches this value (ReachedTauTarget); +inf disables.
    double tau_target = std::numeric_limits<double>::infinity();
    /// Abort with TauBlowup when tau or tau_dot exceeds this guard.
    double overflow_guard = 1e12;
    /// Bisection tolerance (in t) for locating terminal events.
    double event_tol = 1e-12;
};

/// Trajectory of the scalar reparametrization ODE
///   tau'' = 2 [ integral (f+tau xi)^{(1+alpha)/(1-alpha)} xi
///             / integral (f+tau xi)^{2/(1-alpha)} ] tau'^2,
///   tau(0) = 0, tau'(0) = 1.
/// tau is strictly increasing on the computed interval.  Integration ends
/// at the first of: the tau target, loss of positivity of f + tau xi
/// (event-located in t), an overflow guard, or max_time.
struct TauSolution {
    std::vector<double> t;
    std::vector<double> tau;
    std::vector<double> tau_dot;
    TauTerminal terminal;
    double t_end;
    double tau_end;
    double tau_dot_end;
};

TauSolution tau_ivp(const SurfacePoint& p, std::span<const double> xi, const TauControls& controls,
                    std::span<const double> sample_times = {});

/// Geodesic of the alpha-family on probability densities (alpha != 1),
/// computed by charting the initial data, solving the tau ODE, and
/// pulling the projected line back:
///   gamma(t) = (2/|1-alpha|) (f + tau xi) / (integral (f+tau xi)^{2/(1-alpha)})^{(1-alpha)/2}.
Density geodesic_prob_ivp(Alpha alpha, const Density& mu0, const Tangent& a, double t);

/// Batch version: one integration, samples at the given times.
std::vector<Density> geodesic_prob_ivp_samples(Alpha alpha, const Density& mu0, const Tangent& a,
                                               std::span<const double> ts);

struct ProbBvp {
    std::vector<double> t;
    std::vector<Density> path;
    double travel_time;
};

/// Boundary-value geodesic from mu0 to mu1 (alpha != 1): chart both
/// endpoints, shoot along xi = f1 - f0 until tau reaches 1 (guaranteed),
/// and sample the path at `samples` uniform times.
ProbBvp geodesic_prob_bvp(Alpha alpha, const Density& mu0, const Density& mu1, int samples = 33,
                          const TauControls& controls = {});

/// alpha = 1 geodesic between probability densities, complete for all t:
/// straight line in the zero-average log chart, pulled back by
/// mass normalization.
Density geodesic_prob_alpha1(const Density& mu0, const Density& mu1, double t);

} // namespace alphafr

#endif
