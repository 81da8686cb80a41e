#include "alphafr/connections.hpp"

#include <cmath>
#include <vector>

namespace alphafr {

namespace {

void require_prob_inputs(const Density& mu, const Tangent& a, const Tangent& b,
                         const char* where) {
    if (!mu.is_prob())
        throw ContractViolation(std::string(where) + ": mu must be a probability density");
    if (!a.is_prob_tangent() || !b.is_prob_tangent())
        throw ContractViolation(std::string(where) + ": tangents must have zero weighted mean");
}

Density shift_density(const Density& mu, const Tangent& dir, double eps, const char* where) {
    std::vector<double> h(mu.h());
    for (size_t i = 0; i < h.size(); ++i) {
        h[i] += eps * dir.r()[i];
        if (!(h[i] > 0.0))
            throw DomainError(std::string(where) + ": finite-difference step left the positive cone");
    }
    return Density(mu.grid_ptr(), std::move(h));
}

void require_eps(double eps, const char* where) {
    if (!(eps > 0.0)) throw DomainError(std::string(where) + ": eps must be positive");
}

} // namespace

Tangent christoffel_dens(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b) {
    require_finite_alpha(alpha, "christoffel_dens");
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "christoffel_dens");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "christoffel_dens");
    const double coeff = -0.5 * (1.0 + alpha.value);
    std::vector<double> g(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < g.size(); ++i) {
        if (!(mu.h()[i] > 0.0)) throw DomainError("christoffel_dens: density not positive");
        g[i] = coeff * a.r()[i] * b.r()[i] / mu.h()[i];
    }
    return Tangent(mu.grid_ptr(), std::move(g));
}

Tangent christoffel_prob(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b) {
    require_finite_alpha(alpha, "christoffel_prob");
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "christoffel_prob");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "christoffel_prob");
    require_prob_inputs(mu, a, b, "christoffel_prob");
    const double coeff = -0.5 * (1.0 + alpha.value);
    const double g_ab = fr_inner(mu, a, b);
    std::vector<double> g(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < g.size(); ++i)
        g[i] = coeff * (a.r()[i] * b.r()[i] / mu.h()[i] - g_ab * mu.h()[i]);
    return Tangent(mu.grid_ptr(), std::move(g));
}

Tangent christoffel_alphafr_prob(Alpha alpha, const Density& mu, const Tangent& a,
                                 const Tangent& b) {
    require_finite_alpha(alpha, "christoffel_alphafr_prob");
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "christoffel_alphafr_prob");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "christoffel_alphafr_prob");
    require_prob_inputs(mu, a, b, "christoffel_alphafr_prob");
    const double coeff = -0.5 * (1.0 + alpha.value);
    const double g_ab = fr_inner(mu, a, b);
    const auto& w = mu.grid().weights();
    // Normal direction of the restricted metric: h^{alpha+1} rescaled to
    // unit integral against the reference.
    double denom = 0.0;
    std::vector<double> normal(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < normal.size(); ++i) {
        normal[i] = std::pow(mu.h()[i], alpha.value + 1.0);
        denom += w[i] * normal[i];
    }
    std::vector<double> g(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < g.size(); ++i)
        g[i] = coeff * (a.r()[i] * b.r()[i] / mu.h()[i] - (g_ab / denom) * normal[i]);
    return Tangent(mu.grid_ptr(), std::move(g));
}

double duality_residual(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                        const Tangent& c, double eps) {
    require_eps(eps, "duality_residual");
    const Density plus = shift_density(mu, c, eps, "duality_residual");
    const Density minus = shift_density(mu, c, -eps, "duality_residual");
    const double fd = (fr_inner(plus, a, b) - fr_inner(minus, a, b)) / (2.0 * eps);
    const Tangent ga = christoffel_dens(alpha, mu, c, a);
    const Tangent gb = christoffel_dens(Alpha{-alpha.value}, mu, c, b);
    return std::abs(fd - fr_inner(mu, ga, b) - fr_inner(mu, a, gb));
}

double duality_residual_same_alpha(Alpha alpha, const Density& mu, const Tangent& a,
                                   const Tangent& b, const Tangent& c, double eps) {
    require_eps(eps, "duality_residual_same_alpha");
    const Density plus = shift_density(mu, c, eps, "duality_residual_same_alpha");
    const Density minus = shift_density(mu, c, -eps, "duality_residual_same_alpha");
    const double fd = (fr_inner(plus, a, b) - fr_inner(minus, a, b)) / (2.0 * eps);
    const Tangent ga = christoffel_dens(alpha, mu, c, a);
    const Tangent gb = christoffel_dens(alpha, mu, c, b);
    return std::abs(fd - fr_inner(mu, ga, b) - fr_inner(mu, a, gb));
}

double metric_compat_residual_dens(Alpha alpha, const Density& mu, const Tangent& a,
                                   const Tangent& b, const Tangent& c, double eps) {
    require_eps(eps, "metric_compat_residual_dens");
    const Density plus = shift_density(mu, a, eps, "metric_compat_residual_dens");
    const Density minus = shift_density(mu, a, -eps, "metric_compat_residual_dens");
    const double fd =
        (alpha_inner(alpha, plus, b, c) - alpha_inner(alpha, minus, b, c)) / (2.0 * eps);
    const Tangent gab = christoffel_dens(alpha, mu, a, b);
    const Tangent gac = christoffel_dens(alpha, mu, a, c);
    return std::abs(fd - alpha_inner(alpha, mu, gab, c) - alpha_inner(alpha, mu, b, gac));
}

Tangent curvature_prob(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                       const Tangent& c) {
    require_finite_alpha(alpha, "curvature_prob");
    require_prob_inputs(mu, a, b, "curvature_prob");
    if (!c.is_prob_tangent())
        throw ContractViolation("curvature_prob: tangents must have zero weighted mean");
    const double coeff = 0.25 * (1.0 - alpha.value * alpha.value);
    const double g_bc = fr_inner(mu, b, c);
    const double g_ac = fr_inner(mu, a, c);
    std::vector<double> out(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = coeff * (g_bc * a.r()[i] - g_ac * b.r()[i]);
    return Tangent(mu.grid_ptr(), std::move(out));
}

Tangent curvature_fd_oracle(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b,
                            const Tangent& c, double eps) {
    require_eps(eps, "curvature_fd_oracle");
    require_prob_inputs(mu, a, b, "curvature_fd_oracle");

    // Directional derivative of mu -> christoffel_prob(mu, x, y) at mu.
    auto d_gamma = [&](const Tangent& dir, const Tangent& x, const Tangent& y) {
        const Density plus = shift_density(mu, dir, eps, "curvature_fd_oracle");
        const Density minus = shift_density(mu, dir, -eps, "curvature_fd_oracle");
        const Tangent gp = christoffel_prob(alpha, plus, x, y);
        const Tangent gm = christoffel_prob(alpha, minus, x, y);
        std::vector<double> out(static_cast<size_t>(mu.size()));
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = (gp.r()[i] - gm.r()[i]) / (2.0 * eps);
        return Tangent(mu.grid_ptr(), std::move(out));
    };

    const Tangent dA = d_gamma(a, b, c);
    const Tangent dB = d_gamma(b, a, c);
    const Tangent gBC = christoffel_prob(alpha, mu, b, c);
    const Tangent gAC = christoffel_prob(alpha, mu, a, c);
    const Tangent gA_gBC = christoffel_prob(alpha, mu, a, gBC);
    const Tangent gB_gAC = christoffel_prob(alpha, mu, b, gAC);

    std::vector<double> out(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = dA.r()[i] + gA_gBC.r()[i] - dB.r()[i] - gB_gAC.r()[i];
    return Tangent(mu.grid_ptr(), std::move(out));
}

} // namespace alphafr
