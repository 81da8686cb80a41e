#ifndef ALPHAFR_GEODESICS_DENS_HPP
#define ALPHAFR_GEODESICS_DENS_HPP

#include <span>
#include <vector>

#include "alphafr/grid.hpp"
#include "alphafr/metrics.hpp"

namespace alphafr {

/// Flattening chart on positive densities:
///   alpha != 1:  f = (2/|1-alpha|) h^{(1-alpha)/2}
///   alpha  = 1:  f = log h
/// Geodesics of the weighted geometry are affine in this chart.
std::vector<double> phi_alpha(Alpha alpha, const Density& mu);

/// Inverse chart.  For alpha != 1 requires f > 0 pointwise (out-of-chart
/// error otherwise); for alpha = 1 the chart image is unrestricted.
Density phi_alpha_inv(Alpha alpha, GridPtr grid, std::span<const double> f);

/// Geodesic through mu0 with data tangent a, evaluated at time t:
///   alpha != 1:  h(t) = (h0^{(1-alpha)/2} + t h0^{-(1+alpha)/2} r)^{2/(1-alpha)}
///   alpha  = 1:  h(t) = h0 exp(t r / h0).
/// Throws GeodesicEscape when t >= blowup_time(alpha, mu0, a).
Density geodesic_dens(Alpha alpha, const Density& mu0, const Tangent& a, double t);

/// Time derivative of the closed form at time t (for energy bookkeeping
/// and residual checks).
Tangent geodesic_dens_velocity(Alpha alpha, const Density& mu0, const Tangent& a, double t);

/// First exit time from the positive cone.  Infinite for alpha = 1 and
/// whenever r >= 0 everywhere; otherwise the smallest root of the inner
/// linear function, min over {i : r_i < 0} of h0_i / (-r_i), which does
/// not depend on alpha.
double blowup_time(Alpha alpha, const Density& mu0, const Tangent& a);

/// Data tangent joining mu0 to mu1 in unit time:
///   alpha != 1:  r = h0^{(1+alpha)/2} (h1^{(1-alpha)/2} - h0^{(1-alpha)/2})
///   alpha  = 1:  r = h0 log(h1/h0),
/// so geodesic_dens(alpha, mu0, log_map_dens(alpha,mu0,mu1), 1) == mu1.
Tangent log_map_dens(Alpha alpha, const Density& mu0, const Density& mu1);

/// Max over the uniform time grid and space of
///   | h_tt - (1+alpha)/2 * h_t^2 / h |
/// with time derivatives by central differences; certifies that the
/// closed form solves the geodesic equation.
double geodesic_residual(Alpha alpha, const Density& mu0, const Tangent& a,
                         std::span<const double> t_grid);

} // namespace alphafr

#endif
