#ifndef ALPHAFR_PJ_HPP
#define ALPHAFR_PJ_HPP

#include <span>
#include <vector>

#include "alphafr/grid.hpp"
#include "alphafr/metrics.hpp"

namespace alphafr {

/// Orientation-preserving map of the truncated line, stored together
/// with its derivative.  phi - id vanishes left of the support window
/// and is constant to the right of it; phi_x is 1 outside the window.
struct Diffeo1D {
    GridPtr grid;
    std::vector<double> phi;
    std::vector<double> dphi;
};

/// Velocity field on the line: zero left of the support window, constant
/// to the right of it.
struct VelocityField {
    GridPtr grid;
    std::vector<double> u;
};

Diffeo1D identity_diffeo(GridPtr grid);

/// Chart a diffeomorphism as the density with values phi_x on the grid.
/// Composing with the inverse map is the classical correspondence that
/// turns the weighted metric into the alpha-H1 metric; in this chart the
/// identification is the plain Jacobian.
Density theta_map(const Diffeo1D& phi);

/// Inverse chart: phi(y) = -L + cumulative integral of h up to y, with
/// phi_x = h.  Requires h == 1 outside the support window (the tails are
/// not representable otherwise).
Diffeo1D theta_inverse(const Density& mu);

/// Weighted H1 inner product at phi for Lagrangian tangents U = u o phi,
/// V = v o phi:  integral of phi_x^{-alpha-1} U_x V_x, with fourth-order
/// central derivatives.  Right-invariant under composition with generic
/// diffeomorphisms exactly when alpha = 0; invariant under shifts for
/// every alpha.
double alpha_h1_inner(Alpha alpha, const Diffeo1D& phi, std::span<const double> U,
                      std::span<const double> V);

/// Evolve the initial velocity u0 as the geodesic flow of the weighted
/// H1 geometry: chart the flow as a line-density geodesic, rebuild the
/// diffeomorphism path by cumulative integration, and recover
/// u(t) = phi_t o phi^{-1} with phi_t by centered differences on the
/// time grid.  Throws GeodesicEscape (with the exit time attached) if
/// the grid crosses the flow's maximal interval.
std::vector<VelocityField> gpj_solve(Alpha alpha, const VelocityField& u0,
                                     std::span<const double> t_grid);

/// Max over interior space-time samples of
///   | u_txx + (2-alpha) u_x u_xx + u u_xxx |
/// (second order in time, fourth order in space), taken on the support
/// window with a two-cell margin.
double gpj_residual(Alpha alpha, std::span<const VelocityField> u_traj,
                    std::span<const double> t_grid);

/// Exit time of the flow started at u0 (+inf when global).
double gpj_blowup_time(Alpha alpha, const VelocityField& u0);

} // namespace alphafr

#endif
