#ifndef ALPHAFR_CONNECTIONS_HPP
#define ALPHAFR_CONNECTIONS_HPP

#include "alphafr/grid.hpp"
#include "alphafr/metrics.hpp"

namespace alphafr {

/// Christoffel map of the alpha-family on positive densities:
///   Gamma(a,b)/lambda = -(1+alpha)/2 * r^a r^b / h,
/// so the covariant derivative is nabla_a b = Db.a + Gamma(a,b).
/// Vanishes identically at alpha = -1.
Tangent christoffel_dens(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b);

/// Christoffel map of the alpha-family on probability densities: the
/// Fisher-Rao-orthogonal projection of christoffel_dens onto zero-mean
/// tangents,
///   Gamma(a,b)/lambda = -(1+alpha)/2 * (r^a r^b / h - fr_inner(mu,a,b) h).
Tangent christoffel_prob(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b);

/// Christoffel map of the Levi-Civita connection of the restricted
/// weighted metric on probability densities:
///   Gamma(a,b)/lambda = -(1+alpha)/2 * (r^a r^b / h
///        - [fr_inner(mu,a,b) / integral h^{alpha+1}] h^{alpha+1}).
/// Agrees with christoffel_prob exactly when alpha is 0 or -1.
Tangent christoffel_alphafr_prob(Alpha alpha, const Density& mu, const Tangent& a,
                                 const Tangent& b);

/// Residual of the duality identity for constant vector fields:
///   | FD_c[fr_inner(.,a,b)](mu) - G(Gamma^{(alpha)}(c,a), b)
///                               - G(a, Gamma^{(-alpha)}(c,b)) |
/// with a central finite difference of step eps in direction c.
double duality_residual(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                        const Tangent& c, double eps);

/// Same residual with the second slot also using Gamma^{(alpha)}; stays
/// large for alpha != 0 and witnesses that duality needs the sign flip.
double duality_residual_same_alpha(Alpha alpha, const Density& mu, const Tangent& a,
                                   const Tangent& b, const Tangent& c, double eps);

/// Metric-compatibility residual of christoffel_dens against alpha_inner
/// for constant fields b, c:
///   | FD_a[alpha_inner(.,b,c)](mu) - G^a(Gamma(a,b),c) - G^a(b,Gamma(a,c)) |.
double metric_compat_residual_dens(Alpha alpha, const Density& mu, const Tangent& a,
                                   const Tangent& b, const Tangent& c, double eps);

/// Closed-form curvature of the alpha-family on probability densities:
///   R(a,b)c = (1-alpha^2)/4 * (fr_inner(mu,b,c) a - fr_inner(mu,a,c) b).
Tangent curvature_prob(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                       const Tangent& c);

/// Independent check of curvature_prob: assembles
/// nabla_a nabla_b c - nabla_b nabla_a c from christoffel_prob, taking
/// the derivative of mu -> Gamma_mu(.,.) by central differences of step
/// eps.  Constant extensions of a, b, c make the bracket term vanish.
Tangent curvature_fd_oracle(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                            const Tangent& c, double eps);

} // namespace alphafr

#endif
