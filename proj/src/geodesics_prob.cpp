#include "alphafr/geodesics_prob.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alphafr/ode.hpp"

namespace alphafr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_alpha_not_one(Alpha alpha, const char* where) {
    require_finite_alpha(alpha, where);
    if (alpha.value == 1.0)
        throw DomainError(std::string(where) + ": alpha = 1 uses the log-chart operations");
}

void require_prob_reference(const Grid1D& g, const char* where) {
    if (std::abs(g.total_weight() - 1.0) > 1e-8)
        throw ContractViolation(std::string(where) +
                                ": reference density must have unit mass (periodic grid)");
}

/// Exponents of the surface geometry for a fixed alpha != 1.
struct SurfaceExponents {
    double q;      // (1+alpha)/(1-alpha), pairing weight exponent
    double p;      // 2/(1-alpha), constraint exponent (p = q + 1)
    double scale;  // 2/|1-alpha|
    explicit SurfaceExponents(Alpha alpha)
        : q((1.0 + alpha.value) / (1.0 - alpha.value)),
          p(2.0 / (1.0 - alpha.value)),
          scale(2.0 / std::abs(1.0 - alpha.value)) {}
};

/// First tau at which f + tau*xi stops being positive (+inf if never).
double positivity_bound(std::span<const double> f, std::span<const double> xi) {
    double bound = kInf;
    for (size_t i = 0; i < f.size(); ++i)
        if (xi[i] < 0.0) bound = std::min(bound, f[i] / (-xi[i]));
    return bound;
}

Density pull_back_line(const SurfacePoint& p, std::span<const double> xi, double tau) {
    const SurfaceExponents e(p.alpha);
    const auto& w = p.grid->weights();
    std::vector<double> base(p.f.size());
    double den = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
        base[i] = p.f[i] + tau * xi[i];
        if (!(base[i] > 0.0))
            throw GeodesicEscape("geodesic_prob: chart line left the positive cone",
                                 positivity_bound(p.f, xi));
        den += w[i] * std::pow(base[i], e.p);
    }
    const double norm = std::pow(den, 0.5 * (1.0 - p.alpha.value));
    std::vector<double> gamma(base.size());
    for (size_t i = 0; i < base.size(); ++i) gamma[i] = e.scale * base[i] / norm;
    return from_surface(SurfacePoint{p.alpha, p.grid, std::move(gamma)});
}

} // namespace

SurfacePoint to_surface(Alpha alpha, const Density& mu) {
    require_alpha_not_one(alpha, "to_surface");
    require_prob_reference(mu.grid(), "to_surface");
    if (!mu.is_prob())
        throw ContractViolation("to_surface: mu must be a probability density");
    const double expo = 0.5 * (1.0 - alpha.value);
    const SurfaceExponents e(alpha);
    std::vector<double> f(static_cast<size_t>(mu.size()));
    for (size_t i = 0; i < f.size(); ++i) f[i] = e.scale * std::pow(mu.h()[i], expo);
    return SurfacePoint{alpha, mu.grid_ptr(), std::move(f)};
}

Density from_surface(const SurfacePoint& p) {
    require_alpha_not_one(p.alpha, "from_surface");
    const double scale = std::abs(1.0 - p.alpha.value) / 2.0;
    const double expo = 2.0 / (1.0 - p.alpha.value);
    std::vector<double> h(p.f.size());
    for (size_t i = 0; i < h.size(); ++i) {
        if (!(p.f[i] > 0.0))
            throw OutOfChartError("from_surface: chart values must be positive");
        h[i] = std::pow(scale * p.f[i], expo);
    }
    return Density(p.grid, std::move(h));
}

double surface_defect(const SurfacePoint& p) {
    const SurfaceExponents e(p.alpha);
    const auto& w = p.grid->weights();
    double acc = 0.0;
    for (size_t i = 0; i < p.f.size(); ++i) acc += w[i] * std::pow(p.f[i], e.p);
    return std::abs(acc - std::pow(e.scale, e.p));
}

std::vector<double> radial_projection(const SurfacePoint& p, std::span<const double> xi) {
    require_alpha_not_one(p.alpha, "radial_projection");
    if (xi.size() != p.f.size()) throw DimensionError("radial_projection: length mismatch");
    const SurfaceExponents e(p.alpha);
    const auto& w = p.grid->weights();
    double pairing = 0.0;
    for (size_t i = 0; i < xi.size(); ++i) pairing += w[i] * std::pow(p.f[i], e.q) * xi[i];
    const double coeff = std::pow(1.0 / e.scale, e.p);
    std::vector<double> out(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) out[i] = xi[i] - coeff * pairing * p.f[i];
    return out;
}

TauSolution tau_ivp(const SurfacePoint& p, std::span<const double> xi, const TauControls& controls,
                    std::span<const double> sample_times) {
    require_alpha_not_one(p.alpha, "tau_ivp");
    if (xi.size() != p.f.size()) throw DimensionError("tau_ivp: length mismatch");
    if (!(controls.rel_tol > 0.0) || !(controls.abs_tol > 0.0) || !(controls.max_time > 0.0) ||
        !(controls.overflow_guard > 0.0) || !(controls.event_tol > 0.0))
        throw ConfigError("tau_ivp: controls must be positive");
    for (size_t k = 1; k < sample_times.size(); ++k)
        if (!(sample_times[k] >= sample_times[k - 1]))
            throw ConfigError("tau_ivp: sample times must be nondecreasing");
    if (!sample_times.empty() && sample_times.front() < 0.0)
        throw ConfigError("tau_ivp: sample times must be nonnegative");

    const SurfaceExponents e(p.alpha);
    const auto& w = p.grid->weights();
    const size_t n = p.f.size();

    auto rhs = [&](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        const double tau = y[0];
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double base = p.f[i] + tau * xi[i];
            if (!(base > 0.0)) return false;
            const double bq = std::pow(base, e.q);
            num += w[i] * bq * xi[i];
            den += w[i] * bq * base;
        }
        if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) return false;
        dy[0] = y[1];
        dy[1] = 2.0 * (num / den) * y[1] * y[1];
        return std::isfinite(dy[1]);
    };

    DormandPrince<2>::Controls ode_controls;
    ode_controls.rel_tol = controls.rel_tol;
    ode_controls.abs_tol = controls.abs_tol;
    ode_controls.h_max = controls.max_time;
    DormandPrince<2> stepper(rhs, ode_controls);

    // Advance a state to an exact time; false if the step size underflows
    // (the trajectory is pinned against the positivity boundary).
    auto advance_to = [&](double& t, std::array<double, 2>& y, double target) {
        double h = std::min(1e-3, std::max(controls.event_tol, target - t));
        while (t < target) {
            if (!stepper.step(t, y, h, target)) return false;
        }
        return true;
    };

    const bool has_target = std::isfinite(controls.tau_target);
    double max_time = controls.max_time;
    if (!has_target && !sample_times.empty())
        max_time = std::min(max_time, sample_times.back());

    TauSolution sol;
    sol.terminal = TauTerminal::MaxTime;

    double t = 0.0;
    std::array<double, 2> y{0.0, 1.0};
    double h = 1e-4;
    size_t next_sample = 0;
    const bool record_steps = sample_times.empty();

    auto record = [&](double tt, const std::array<double, 2>& yy) {
        sol.t.push_back(tt);
        sol.tau.push_back(yy[0]);
        sol.tau_dot.push_back(yy[1]);
    };

    // Emit any requested samples at exactly t = 0 (and duplicates).
    while (next_sample < sample_times.size() && sample_times[next_sample] <= 0.0) {
        record(0.0, y);
        ++next_sample;
    }
    if (record_steps) record(0.0, y);

    bool done = false;
    while (!done) {
        const double next_stop = (next_sample < sample_times.size())
                                     ? std::min(sample_times[next_sample], max_time)
                                     : max_time;
        const double t_prev = t;
        const std::array<double, 2> y_prev = y;

        if (t >= next_stop) {
            // Reached a sample time exactly.
            if (next_sample < sample_times.size() && t >= sample_times[next_sample]) {
                record(t, y);
                ++next_sample;
                continue;
            }
            sol.terminal = TauTerminal::MaxTime;
            break;
        }

        if (!stepper.step(t, y, h, next_stop)) {
            // Step size underflow: the positivity boundary has been reached
            // (located to the stepper's minimum step, far below event_tol).
            sol.terminal = TauTerminal::PositivityLoss;
            done = true;
            break;
        }

        if (has_target && y[0] >= controls.tau_target) {
            // Bisect for tau(t) == tau_target inside (t_prev, t].
            double lo = t_prev, hi = t;
            std::array<double, 2> y_hi = y;
            while (hi - lo > controls.event_tol) {
                const double mid = 0.5 * (lo + hi);
                double tm = t_prev;
                std::array<double, 2> ym = y_prev;
                if (!advance_to(tm, ym, mid)) break;
                if (ym[0] >= controls.tau_target) {
                    hi = mid;
                    y_hi = ym;
                } else {
                    lo = mid;
                }
            }
            t = hi;
            y = y_hi;
            sol.terminal = TauTerminal::ReachedTauTarget;
            done = true;
            break;
        }

        if (y[0] > controls.overflow_guard || y[1] > controls.overflow_guard) {
            sol.terminal = TauTerminal::TauBlowup;
            done = true;
            break;
        }

        if (record_steps) record(t, y);
    }

    sol.t_end = t;
    sol.tau_end = y[0];
    sol.tau_dot_end = y[1];
    return sol;
}

namespace {

std::vector<double> chart_velocity(Alpha alpha, const Density& mu0, const Tangent& a) {
    const double sgn = (1.0 - alpha.value) > 0.0 ? 1.0 : -1.0;
    const double expo = -0.5 * (1.0 + alpha.value);
    std::vector<double> xi(static_cast<size_t>(mu0.size()));
    for (size_t i = 0; i < xi.size(); ++i)
        xi[i] = sgn * std::pow(mu0.h()[i], expo) * a.r()[i];
    return xi;
}

} // namespace

std::vector<Density> geodesic_prob_ivp_samples(Alpha alpha, const Density& mu0, const Tangent& a,
                                               std::span<const double> ts) {
    require_alpha_not_one(alpha, "geodesic_prob_ivp");
    require_same_grid(mu0.grid_ptr(), a.grid_ptr(), "geodesic_prob_ivp");
    if (!a.is_prob_tangent())
        throw ContractViolation("geodesic_prob_ivp: tangent must have zero weighted mean");
    const SurfacePoint p = to_surface(alpha, mu0);
    const std::vector<double> xi = chart_velocity(alpha, mu0, a);

    TauControls controls;
    if (!ts.empty()) controls.max_time = std::max(controls.max_time, ts.back());
    const TauSolution sol = tau_ivp(p, xi, controls, ts);
    if (sol.t.size() != ts.size())
        throw GeodesicEscape("geodesic_prob_ivp: requested time beyond the terminal event (" +
                                 std::string(to_string(sol.terminal)) + ")",
                             sol.tau_end, sol.terminal);
    std::vector<Density> out;
    out.reserve(ts.size());
    for (size_t k = 0; k < ts.size(); ++k) out.push_back(pull_back_line(p, xi, sol.tau[k]));
    return out;
}

Density geodesic_prob_ivp(Alpha alpha, const Density& mu0, const Tangent& a, double t) {
    const double ts[1] = {t};
    return geodesic_prob_ivp_samples(alpha, mu0, a, ts).front();
}

ProbBvp geodesic_prob_bvp(Alpha alpha, const Density& mu0, const Density& mu1, int samples,
                          const TauControls& controls_in) {
    require_alpha_not_one(alpha, "geodesic_prob_bvp");
    require_same_grid(mu0.grid_ptr(), mu1.grid_ptr(), "geodesic_prob_bvp");
    if (mu0.grid().kind() != GridKind::Periodic)
        throw ContractViolation("geodesic_prob_bvp: only periodic grids carry the boundary solver");
    if (samples < 2) throw ConfigError("geodesic_prob_bvp: need at least two path samples");

    const SurfacePoint p0 = to_surface(alpha, mu0);
    const SurfacePoint p1 = to_surface(alpha, mu1);
    std::vector<double> xi(p0.f.size());
    double sup = 0.0, sup_f = 0.0;
    for (size_t i = 0; i < xi.size(); ++i) {
        xi[i] = p1.f[i] - p0.f[i];
        sup = std::max(sup, std::abs(xi[i]));
        sup_f = std::max(sup_f, std::abs(p0.f[i]));
    }
    if (sup <= 1e-14 * sup_f)
        return ProbBvp{{0.0}, {mu0}, 0.0};

    TauControls controls = controls_in;
    controls.tau_target = 1.0;
    const TauSolution shot = tau_ivp(p0, xi, controls);
    if (shot.terminal != TauTerminal::ReachedTauTarget)
        throw ContractViolation(
            std::string("geodesic_prob_bvp: convexity violation diagnostic, terminal = ") +
            to_string(shot.terminal));
    const double travel = shot.t_end;

    std::vector<double> ts(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k)
        ts[static_cast<size_t>(k)] = travel * static_cast<double>(k) / (samples - 1);

    TauControls resample = controls_in;
    resample.max_time = travel;
    const TauSolution sol = tau_ivp(p0, xi, resample, ts);

    ProbBvp out;
    out.travel_time = travel;
    out.t = ts;
    out.path.reserve(ts.size());
    for (size_t k = 0; k < sol.tau.size(); ++k) out.path.push_back(pull_back_line(p0, xi, sol.tau[k]));
    // The resample horizon equals the travel time, so every sample exists;
    // the last tau sits within event tolerance of 1.
    if (out.path.size() != ts.size())
        throw ContractViolation("geodesic_prob_bvp: path resampling lost samples");
    return out;
}

Density geodesic_prob_alpha1(const Density& mu0, const Density& mu1, double t) {
    require_same_grid(mu0.grid_ptr(), mu1.grid_ptr(), "geodesic_prob_alpha1");
    require_prob_reference(mu0.grid(), "geodesic_prob_alpha1");
    if (!mu0.is_prob() || !mu1.is_prob())
        throw ContractViolation("geodesic_prob_alpha1: endpoints must be probability densities");
    const auto& g = mu0.grid();
    const size_t n = static_cast<size_t>(mu0.size());
    std::vector<double> g0(n), g1(n);
    for (size_t i = 0; i < n; ++i) {
        g0[i] = std::log(mu0.h()[i]);
        g1[i] = std::log(mu1.h()[i]);
    }
    const double m0 = g.integrate(g0);
    const double m1 = g.integrate(g1);
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i) {
        const double chart = (1.0 - t) * (g0[i] - m0) + t * (g1[i] - m1);
        h[i] = std::exp(chart);
    }
    const double mass = g.integrate(h);
    for (double& v : h) v /= mass;
    return Density(mu0.grid_ptr(), std::move(h));
}

} // namespace alphafr
