#ifndef ALPHAFR_METRICS_HPP
#define ALPHAFR_METRICS_HPP

#include <span>
#include <vector>

#include "alphafr/grid.hpp"

namespace alphafr {

/// Connection/metric family parameter.  Any finite real value is valid;
/// several operations branch at -1, 0 and 1.
struct Alpha {
    double value;
};

void require_finite_alpha(Alpha alpha, const char* where);

/// Fisher-Rao inner product at mu:  sum_i w_i r^a_i r^b_i / h_i.
double fr_inner(const Density& mu, const Tangent& a, const Tangent& b);

/// Weighted inner product  sum_i w_i h_i^{-alpha-1} r^a_i r^b_i.
/// Coincides with fr_inner at alpha = 0 and with the flat L2 pairing at
/// alpha = -1.
double alpha_inner(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b);

/// Covariance-type metric used by the alpha = 1 geometry on probability
/// densities:  integral of (a/mu)(b/mu) against the reference, minus the
/// product of the individual reference averages.  Requires mu to be a
/// probability density and a, b to have zero weighted mean.
double tilde_g1_inner(const Density& mu, const Tangent& a, const Tangent& b);

/// Divergence between positive densities, defined for alpha in (-1,1):
///   2/(1-alpha) * mass(nu) + 2/(1+alpha) * mass(mu)
///   - 4/((1-alpha)(1+alpha)) * integral of h_mu^{(1-alpha)/2} h_nu^{(1+alpha)/2}.
/// Nonnegative, zero iff mu == nu; its mixed second variation at the
/// diagonal is minus the Fisher-Rao inner product.
double alpha_divergence(Alpha alpha, const Density& mu, const Density& nu);

struct PathSample {
    Density mu;
    Tangent velocity;
};

/// Instantaneous energy alpha_inner(alpha, mu(t), mu_t(t), mu_t(t)) per
/// path sample.  Constant along geodesics of the matching geometry.
std::vector<double> path_energy(Alpha alpha, std::span<const PathSample> path);

} // namespace alphafr

#endif
