#include "alphafr/geodesics_dens.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace alphafr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_one(Alpha alpha) { return alpha.value == 1.0; }

void check_pair(Alpha alpha, const Density& mu0, const Tangent& a, const char* where) {
    require_finite_alpha(alpha, where);
    require_same_grid(mu0.grid_ptr(), a.grid_ptr(), where);
}

} // namespace

std::vector<double> phi_alpha(Alpha alpha, const Density& mu) {
    require_finite_alpha(alpha, "phi_alpha");
    std::vector<double> f(static_cast<size_t>(mu.size()));
    if (is_one(alpha)) {
        for (size_t i = 0; i < f.size(); ++i) f[i] = std::log(mu.h()[i]);
    } else {
        const double scale = 2.0 / std::abs(1.0 - alpha.value);
        const double expo = 0.5 * (1.0 - alpha.value);
        for (size_t i = 0; i < f.size(); ++i) f[i] = scale * std::pow(mu.h()[i], expo);
    }
    return f;
}

Density phi_alpha_inv(Alpha alpha, GridPtr grid, std::span<const double> f) {
    require_finite_alpha(alpha, "phi_alpha_inv");
    if (static_cast<int>(f.size()) != grid->size())
        throw DimensionError("phi_alpha_inv: length mismatch");
    std::vector<double> h(f.size());
    if (is_one(alpha)) {
        for (size_t i = 0; i < h.size(); ++i) h[i] = std::exp(f[i]);
    } else {
        const double scale = std::abs(1.0 - alpha.value) / 2.0;
        const double expo = 2.0 / (1.0 - alpha.value);
        for (size_t i = 0; i < h.size(); ++i) {
            if (!(f[i] > 0.0))
                throw OutOfChartError("phi_alpha_inv: chart values must be positive for alpha != 1");
            h[i] = std::pow(scale * f[i], expo);
        }
    }
    return Density(std::move(grid), std::move(h));
}

double blowup_time(Alpha alpha, const Density& mu0, const Tangent& a) {
    check_pair(alpha, mu0, a, "blowup_time");
    if (is_one(alpha)) return kInf;
    double t = kInf;
    for (int i = 0; i < mu0.size(); ++i)
        if (a.r(i) < 0.0) t = std::min(t, mu0.h(i) / (-a.r(i)));
    return t;
}

Density geodesic_dens(Alpha alpha, const Density& mu0, const Tangent& a, double t) {
    check_pair(alpha, mu0, a, "geodesic_dens");
    std::vector<double> h(static_cast<size_t>(mu0.size()));
    if (is_one(alpha)) {
        for (size_t i = 0; i < h.size(); ++i) {
            const double h0 = mu0.h()[i];
            h[i] = h0 * std::exp(t * a.r()[i] / h0);
        }
        return Density(mu0.grid_ptr(), std::move(h));
    }
    const double T = blowup_time(alpha, mu0, a);
    if (t >= T)
        throw GeodesicEscape("geodesic_dens: evaluation at or past the exit time", T);
    const double em = 0.5 * (1.0 - alpha.value);
    const double ep = -0.5 * (1.0 + alpha.value);
    const double expo = 2.0 / (1.0 - alpha.value);
    for (size_t i = 0; i < h.size(); ++i) {
        const double h0 = mu0.h()[i];
        const double base = std::pow(h0, em) + t * std::pow(h0, ep) * a.r()[i];
        if (!(base > 0.0))
            throw GeodesicEscape("geodesic_dens: chart value left the positive cone", T);
        h[i] = std::pow(base, expo);
    }
    return Density(mu0.grid_ptr(), std::move(h));
}

Tangent geodesic_dens_velocity(Alpha alpha, const Density& mu0, const Tangent& a, double t) {
    check_pair(alpha, mu0, a, "geodesic_dens_velocity");
    std::vector<double> v(static_cast<size_t>(mu0.size()));
    if (is_one(alpha)) {
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = a.r()[i] * std::exp(t * a.r()[i] / mu0.h()[i]);
        return Tangent(mu0.grid_ptr(), std::move(v));
    }
    const double T = blowup_time(alpha, mu0, a);
    if (t >= T)
        throw GeodesicEscape("geodesic_dens_velocity: evaluation at or past the exit time", T);
    const double em = 0.5 * (1.0 - alpha.value);
    const double ep = -0.5 * (1.0 + alpha.value);
    const double expo = 2.0 / (1.0 - alpha.value);
    for (size_t i = 0; i < v.size(); ++i) {
        const double h0 = mu0.h()[i];
        const double slope = std::pow(h0, ep) * a.r()[i];
        const double base = std::pow(h0, em) + t * slope;
        v[i] = expo * std::pow(base, expo - 1.0) * slope;
    }
    return Tangent(mu0.grid_ptr(), std::move(v));
}

Tangent log_map_dens(Alpha alpha, const Density& mu0, const Density& mu1) {
    require_finite_alpha(alpha, "log_map_dens");
    require_same_grid(mu0.grid_ptr(), mu1.grid_ptr(), "log_map_dens");
    std::vector<double> r(static_cast<size_t>(mu0.size()));
    if (is_one(alpha)) {
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = mu0.h()[i] * std::log(mu1.h()[i] / mu0.h()[i]);
        return Tangent(mu0.grid_ptr(), std::move(r));
    }
    const double em = 0.5 * (1.0 - alpha.value);
    const double ep = 0.5 * (1.0 + alpha.value);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = std::pow(mu0.h()[i], ep) * (std::pow(mu1.h()[i], em) - std::pow(mu0.h()[i], em));
    return Tangent(mu0.grid_ptr(), std::move(r));
}

double geodesic_residual(Alpha alpha, const Density& mu0, const Tangent& a,
                         std::span<const double> t_grid) {
    check_pair(alpha, mu0, a, "geodesic_residual");
    if (t_grid.size() < 3)
        throw ContractViolation("geodesic_residual: need at least three time samples");
    const double dt = t_grid[1] - t_grid[0];
    for (size_t k = 1; k + 1 < t_grid.size(); ++k)
        if (std::abs((t_grid[k + 1] - t_grid[k]) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw ContractViolation("geodesic_residual: time grid must be uniform");
    const double T = blowup_time(alpha, mu0, a);
    if (t_grid.back() >= T)
        throw GeodesicEscape("geodesic_residual: time grid crosses the exit time", T);

    std::vector<Density> samples;
    samples.reserve(t_grid.size());
    for (double t : t_grid) samples.push_back(geodesic_dens(alpha, mu0, a, t));

    const double coeff = 0.5 * (1.0 + alpha.value);
    double worst = 0.0;
    for (size_t k = 1; k + 1 < t_grid.size(); ++k) {
        const auto& hm = samples[k - 1].h();
        const auto& h0 = samples[k].h();
        const auto& hp = samples[k + 1].h();
        for (size_t i = 0; i < h0.size(); ++i) {
            const double ht = (hp[i] - hm[i]) / (2.0 * dt);
            const double htt = (hp[i] - 2.0 * h0[i] + hm[i]) / (dt * dt);
            worst = std::max(worst, std::abs(htt - coeff * ht * ht / h0[i]));
        }
    }
    return worst;
}

} // namespace alphafr
