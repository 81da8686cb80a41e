#include "alphafr/metrics.hpp"

#include <cmath>

namespace alphafr {

namespace {

constexpr double kPositivityFloor = 1e-300;

void require_positive(const Density& mu, const char* where) {
    for (double v : mu.h())
        if (v < kPositivityFloor)
            throw DomainError(std::string(where) + ": density not positive");
}

} // namespace

void require_finite_alpha(Alpha alpha, const char* where) {
    if (!std::isfinite(alpha.value))
        throw DomainError(std::string(where) + ": alpha must be finite");
}

double fr_inner(const Density& mu, const Tangent& a, const Tangent& b) {
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "fr_inner");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "fr_inner");
    require_positive(mu, "fr_inner");
    const auto& w = mu.grid().weights();
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) acc += w[i] * a.r()[i] * b.r()[i] / mu.h()[i];
    return acc;
}

double alpha_inner(Alpha alpha, const Density& mu, const Tangent& a, const Tangent& b) {
    require_finite_alpha(alpha, "alpha_inner");
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "alpha_inner");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "alpha_inner");
    require_positive(mu, "alpha_inner");
    const double expo = -alpha.value - 1.0;
    const auto& w = mu.grid().weights();
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i)
        acc += w[i] * std::pow(mu.h()[i], expo) * a.r()[i] * b.r()[i];
    return acc;
}

double tilde_g1_inner(const Density& mu, const Tangent& a, const Tangent& b) {
    require_same_grid(mu.grid_ptr(), a.grid_ptr(), "tilde_g1_inner");
    require_same_grid(mu.grid_ptr(), b.grid_ptr(), "tilde_g1_inner");
    require_positive(mu, "tilde_g1_inner");
    if (!mu.is_prob())
        throw ContractViolation("tilde_g1_inner: mu must be a probability density");
    if (!a.is_prob_tangent() || !b.is_prob_tangent())
        throw ContractViolation("tilde_g1_inner: tangents must have zero weighted mean");
    const auto& w = mu.grid().weights();
    double cross = 0.0, mean_a = 0.0, mean_b = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        const double ra = a.r()[i] / mu.h()[i];
        const double rb = b.r()[i] / mu.h()[i];
        cross += w[i] * ra * rb;
        mean_a += w[i] * ra;
        mean_b += w[i] * rb;
    }
    return cross - mean_a * mean_b;
}

double alpha_divergence(Alpha alpha, const Density& mu, const Density& nu) {
    require_finite_alpha(alpha, "alpha_divergence");
    if (std::abs(alpha.value) >= 1.0)
        throw DomainError("alpha_divergence: requires alpha in (-1,1)");
    require_same_grid(mu.grid_ptr(), nu.grid_ptr(), "alpha_divergence");
    require_positive(mu, "alpha_divergence");
    require_positive(nu, "alpha_divergence");
    const double am = alpha.value;
    const double cm = 2.0 / (1.0 + am);
    const double cn = 2.0 / (1.0 - am);
    const double cmix = 4.0 / ((1.0 - am) * (1.0 + am));
    const auto& w = mu.grid().weights();
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        const double hm = mu.h()[i];
        const double hn = nu.h()[i];
        acc += w[i] * (cn * hn + cm * hm -
                       cmix * std::pow(hm, 0.5 * (1.0 - am)) * std::pow(hn, 0.5 * (1.0 + am)));
    }
    return acc;
}

std::vector<double> path_energy(Alpha alpha, std::span<const PathSample> path) {
    require_finite_alpha(alpha, "path_energy");
    if (path.empty()) throw ContractViolation("path_energy: empty path");
    std::vector<double> energy;
    energy.reserve(path.size());
    for (const PathSample& s : path)
        energy.push_back(alpha_inner(alpha, s.mu, s.velocity, s.velocity));
    return energy;
}

} // namespace alphafr
