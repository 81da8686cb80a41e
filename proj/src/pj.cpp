#include "alphafr/pj.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alphafr/fd.hpp"
#include "alphafr/geodesics_dens.hpp"

namespace alphafr {

namespace {

void require_line(const Grid1D& g, const char* where) {
    if (g.kind() != GridKind::Line)
        throw ContractViolation(std::string(where) + ": needs a line grid");
}

void require_compact_input(const Grid1D& g, std::span<const double> u, const char* where) {
    for (int i = 0; i < g.size(); ++i)
        if (!g.in_support(g.node(i)) && std::abs(u[static_cast<size_t>(i)]) > 1e-9)
            throw ContractViolation(std::string(where) +
                                    ": initial field must vanish outside the support window");
}

/// Lagrangian density velocity matching an initial Eulerian velocity u0:
/// the chart slope of the flow is u0_y, rescaled so that the geodesic
/// parametrization used by geodesic_dens carries initial velocity u0.
Tangent flow_tangent(Alpha alpha, const GridPtr& grid, std::span<const double> u0) {
    std::vector<double> r = deriv1_4th(u0, grid->spacing());
    if (alpha.value != 1.0) {
        const double scale = 0.5 * (1.0 - alpha.value);
        for (double& v : r) v *= scale;
    }
    return Tangent(grid, std::move(r));
}

} // namespace

Diffeo1D identity_diffeo(GridPtr grid) {
    require_line(*grid, "identity_diffeo");
    Diffeo1D d;
    d.phi = grid->nodes();
    d.dphi.assign(static_cast<size_t>(grid->size()), 1.0);
    d.grid = std::move(grid);
    return d;
}

Density theta_map(const Diffeo1D& phi) {
    require_line(*phi.grid, "theta_map");
    if (phi.phi.size() != phi.dphi.size() ||
        static_cast<int>(phi.phi.size()) != phi.grid->size())
        throw DimensionError("theta_map: inconsistent diffeomorphism arrays");
    for (size_t i = 1; i < phi.phi.size(); ++i)
        if (!(phi.phi[i] > phi.phi[i - 1]))
            throw DomainError("theta_map: map is not strictly increasing");
    for (double v : phi.dphi)
        if (!(v > 0.0)) throw DomainError("theta_map: derivative must be positive");
    return Density(phi.grid, phi.dphi);
}

Diffeo1D theta_inverse(const Density& mu) {
    require_line(mu.grid(), "theta_inverse");
    const auto& g = mu.grid();
    for (int i = 0; i < g.size(); ++i)
        if (!g.in_support(g.node(i)) && std::abs(mu.h(i) - 1.0) > 1e-9)
            throw ContractViolation("theta_inverse: density must equal 1 outside the window");
    std::vector<double> phi = cumint4(mu.h(), g.spacing());
    for (double& v : phi) v -= g.half_length();
    Diffeo1D out;
    out.grid = mu.grid_ptr();
    out.phi = std::move(phi);
    out.dphi = mu.h();
    return out;
}

double alpha_h1_inner(Alpha alpha, const Diffeo1D& phi, std::span<const double> U,
                      std::span<const double> V) {
    require_finite_alpha(alpha, "alpha_h1_inner");
    require_line(*phi.grid, "alpha_h1_inner");
    if (static_cast<int>(U.size()) != phi.grid->size() ||
        static_cast<int>(V.size()) != phi.grid->size())
        throw DimensionError("alpha_h1_inner: length mismatch");
    const std::vector<double> Ux = deriv1_4th(U, phi.grid->spacing());
    const std::vector<double> Vx = deriv1_4th(V, phi.grid->spacing());
    const auto& w = phi.grid->weights();
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
        acc += w[i] * std::pow(phi.dphi[i], -alpha.value - 1.0) * Ux[i] * Vx[i];
    return acc;
}

double gpj_blowup_time(Alpha alpha, const VelocityField& u0) {
    require_finite_alpha(alpha, "gpj_blowup_time");
    require_line(*u0.grid, "gpj_blowup_time");
    const Density lambda(u0.grid,
                         std::vector<double>(static_cast<size_t>(u0.grid->size()), 1.0));
    return blowup_time(alpha, lambda, flow_tangent(alpha, u0.grid, u0.u));
}

std::vector<VelocityField> gpj_solve(Alpha alpha, const VelocityField& u0,
                                     std::span<const double> t_grid) {
    require_finite_alpha(alpha, "gpj_solve");
    require_line(*u0.grid, "gpj_solve");
    if (static_cast<int>(u0.u.size()) != u0.grid->size())
        throw DimensionError("gpj_solve: velocity does not match grid");
    require_compact_input(*u0.grid, u0.u, "gpj_solve");
    if (t_grid.size() < 3)
        throw ContractViolation("gpj_solve: need at least three time samples");
    const double dt = t_grid[1] - t_grid[0];
    for (size_t k = 1; k + 1 < t_grid.size(); ++k)
        if (std::abs((t_grid[k + 1] - t_grid[k]) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw ContractViolation("gpj_solve: time grid must be uniform");

    const auto& g = *u0.grid;
    const size_t n = static_cast<size_t>(g.size());
    const Density lambda(u0.grid, std::vector<double>(n, 1.0));
    const Tangent a = flow_tangent(alpha, u0.grid, u0.u);

    const double T = blowup_time(alpha, lambda, a);
    // The centered time differences below reach one step past the grid.
    if (t_grid.back() + dt >= T)
        throw GeodesicEscape("gpj_solve: time grid crosses the exit time of the flow", T);

    // Lagrangian Jacobians phi_x(t) along the flow and the rebuilt maps.
    const size_t K = t_grid.size();
    std::vector<std::vector<double>> jac(K + 2);
    std::vector<std::vector<double>> phi(K);
    auto jacobian_at = [&](double t) { return geodesic_dens(alpha, lambda, a, t).h(); };
    for (size_t k = 0; k < K; ++k) {
        jac[k + 1] = jacobian_at(t_grid[k]);
        phi[k] = cumint4(jac[k + 1], g.spacing());
        for (double& v : phi[k]) v -= g.half_length();
    }
    jac[0] = jacobian_at(t_grid.front() - dt);
    jac[K + 1] = jacobian_at(t_grid.back() + dt);

    std::vector<double> phi_lo = cumint4(jac[0], g.spacing());
    std::vector<double> phi_hi = cumint4(jac[K + 1], g.spacing());
    for (double& v : phi_lo) v -= g.half_length();
    for (double& v : phi_hi) v -= g.half_length();

    std::vector<VelocityField> out;
    out.reserve(K);
    for (size_t k = 0; k < K; ++k) {
        // Centered difference in t of the map and of its y-derivative;
        // the latter supplies exact nodal slopes for the composition.
        const std::vector<double>& prev = (k == 0) ? phi_lo : phi[k - 1];
        const std::vector<double>& next = (k + 1 == K) ? phi_hi : phi[k + 1];
        const std::vector<double>& jac_prev = jac[k];
        const std::vector<double>& jac_next = jac[k + 2];
        std::vector<double> phi_t(n), phi_t_slope(n);
        for (size_t i = 0; i < n; ++i) {
            phi_t[i] = (next[i] - prev[i]) / (2.0 * dt);
            phi_t_slope[i] = (jac_next[i] - jac_prev[i]) / (2.0 * dt);
        }

        CubicHermite map(std::vector<double>(g.nodes()), std::vector<double>(phi[k]),
                         std::vector<double>(jac[k + 1]));
        if (!map.monotone_increasing())
            throw DomainError("gpj_solve: rebuilt map lost monotonicity");
        CubicHermite vel(std::vector<double>(g.nodes()), std::move(phi_t),
                         std::move(phi_t_slope));

        VelocityField field;
        field.grid = u0.grid;
        field.u.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const double x = g.node(static_cast<int>(i));
            if (x <= map.front_value()) {
                field.u[i] = vel.front_value();
            } else if (x >= map.back_value()) {
                field.u[i] = vel.back_value();
            } else {
                field.u[i] = vel.eval(map.invert(x));
            }
        }
        out.push_back(std::move(field));
    }
    return out;
}

double gpj_residual(Alpha alpha, std::span<const VelocityField> u_traj,
                    std::span<const double> t_grid) {
    require_finite_alpha(alpha, "gpj_residual");
    if (u_traj.size() != t_grid.size() || t_grid.size() < 3)
        throw ContractViolation("gpj_residual: need at least three matching time samples");
    const auto& g = *u_traj.front().grid;
    require_line(g, "gpj_residual");
    const double dt = t_grid[1] - t_grid[0];
    for (size_t k = 1; k + 1 < t_grid.size(); ++k)
        if (std::abs((t_grid[k + 1] - t_grid[k]) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw ContractViolation("gpj_residual: time grid must be uniform");

    const double dx = g.spacing();
    std::vector<std::vector<double>> uxx(u_traj.size());
    for (size_t k = 0; k < u_traj.size(); ++k) uxx[k] = deriv2_4th(u_traj[k].u, dx);

    const double margin = g.support() - 2.0 * dx;
    double worst = 0.0;
    for (size_t k = 1; k + 1 < u_traj.size(); ++k) {
        const auto& u = u_traj[k].u;
        const std::vector<double> ux = deriv1_4th(u, dx);
        const std::vector<double> uxxx = deriv3_4th(u, dx);
        for (int i = 0; i < g.size(); ++i) {
            if (std::abs(g.node(i)) > margin) continue;
            const size_t j = static_cast<size_t>(i);
            const double utxx = (uxx[k + 1][j] - uxx[k - 1][j]) / (2.0 * dt);
            const double res =
                utxx + (2.0 - alpha.value) * ux[j] * uxx[k][j] + u[j] * uxxx[j];
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

} // namespace alphafr
