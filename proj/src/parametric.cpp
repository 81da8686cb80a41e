#include "alphafr/parametric.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "alphafr/errors.hpp"

namespace alphafr {

namespace {

constexpr double kScoreStep = 1e-5;  // first derivatives of the log-density
constexpr double kHessStep = 1e-4;   // second derivatives of the log-density
constexpr double kF2Step = 1e-4;     // second derivatives of F
constexpr double kF3Step = 5e-3;     // third derivatives of F (Richardson)

Vector shifted(const Vector& theta, int i, double step) {
    Vector out = theta;
    out[i] += step;
    return out;
}

} // namespace

double CurvatureTensor::max_abs() const {
    double m = 0.0;
    for (double v : coeff) m = std::max(m, std::abs(v));
    return m;
}

const char* to_string(MetricityVerdict::Kind k) {
    switch (k) {
        case MetricityVerdict::Kind::MetricTrivially: return "metric_trivially";
        case MetricityVerdict::Kind::MetricFR: return "metric_fisher_rao";
        case MetricityVerdict::Kind::MetricDual: return "metric_dual";
        case MetricityVerdict::Kind::NonMetric: return "non_metric";
        case MetricityVerdict::Kind::FlatAllAlpha: return "flat_all_alpha";
    }
    return "unknown";
}

double ParamModel::expectation(const std::function<double(const Vector&)>& g,
                               const Vector& theta) const {
    if (const auto* q = std::get_if<QuadratureBackend>(&backend)) {
        double acc = 0.0;
        for (size_t s = 0; s < q->points.size(); ++s)
            acc += q->weights[s] * std::exp(log_density(q->points[s], theta)) * g(q->points[s]);
        return acc;
    }
    const auto& mc = std::get<MonteCarloBackend>(backend);
    std::mt19937_64 rng(mc.seed);
    double acc = 0.0;
    for (int s = 0; s < mc.n_samples; ++s) acc += g(mc.sampler(rng, theta));
    return acc / mc.n_samples;
}

double ParamModel::normalization_defect(const Vector& theta) const {
    if (std::holds_alternative<MonteCarloBackend>(backend)) return 0.0;
    return std::abs(expectation([](const Vector&) { return 1.0; }, theta) - 1.0);
}

namespace {

/// Scores and second log-density derivatives at a sample point, by
/// central differences in theta.
struct LogDerivatives {
    const ParamModel& model;
    const Vector& theta;

    double score(const Vector& x, int i) const {
        return (model.log_density(x, shifted(theta, i, kScoreStep)) -
                model.log_density(x, shifted(theta, i, -kScoreStep))) /
               (2.0 * kScoreStep);
    }

    double hess(const Vector& x, int i, int j) const {
        if (i == j) {
            const double f0 = model.log_density(x, theta);
            const double fp = model.log_density(x, shifted(theta, i, kHessStep));
            const double fm = model.log_density(x, shifted(theta, i, -kHessStep));
            return (fp - 2.0 * f0 + fm) / (kHessStep * kHessStep);
        }
        const Vector pp = shifted(shifted(theta, i, kHessStep), j, kHessStep);
        const Vector pm = shifted(shifted(theta, i, kHessStep), j, -kHessStep);
        const Vector mp = shifted(shifted(theta, i, -kHessStep), j, kHessStep);
        const Vector mm = shifted(shifted(theta, i, -kHessStep), j, -kHessStep);
        return (model.log_density(x, pp) - model.log_density(x, pm) - model.log_density(x, mp) +
                model.log_density(x, mm)) /
               (4.0 * kHessStep * kHessStep);
    }
};

} // namespace

Matrix fisher_info(const ParamModel& model, const Vector& theta) {
    const int d = model.dim;
    const LogDerivatives ld{model, theta};
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            g(i, j) = model.expectation(
                [&](const Vector& x) { return ld.score(x, i) * ld.score(x, j); }, theta);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) g(i, j) = g(j, i);
    return 0.5 * (g + g.transpose());
}

Christoffels alpha_christoffel(const ParamModel& model, Alpha alpha, const Vector& theta) {
    require_finite_alpha(alpha, "alpha_christoffel");
    const int d = model.dim;
    const LogDerivatives ld{model, theta};
    const double half = 0.5 * (1.0 - alpha.value);
    Christoffels gamma(static_cast<size_t>(d), Matrix::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const double value = model.expectation(
                    [&](const Vector& x) {
                        return (ld.hess(x, i, j) + half * ld.score(x, i) * ld.score(x, j)) *
                               ld.score(x, k);
                    },
                    theta);
                gamma[static_cast<size_t>(k)](i, j) = value;
                gamma[static_cast<size_t>(k)](j, i) = value;
            }
    return gamma;
}

double expfam_f2(const ExpFamily& fam, const Vector& theta, int i, int j) {
    const auto& F = fam.log_partition;
    if (i == j) {
        const double f0 = F(theta);
        return (F(shifted(theta, i, kF2Step)) - 2.0 * f0 + F(shifted(theta, i, -kF2Step))) /
               (kF2Step * kF2Step);
    }
    const auto mixed = [&](double h) {
        return (F(shifted(shifted(theta, i, h), j, h)) - F(shifted(shifted(theta, i, h), j, -h)) -
                F(shifted(shifted(theta, i, -h), j, h)) +
                F(shifted(shifted(theta, i, -h), j, -h))) /
               (4.0 * h * h);
    };
    return mixed(kF2Step);
}

namespace {

/// Third partial of F by nested central differences at step h.
double f3_at_step(const ExpFamily& fam, const Vector& theta, int i, int j, int k, double h) {
    const auto d1 = [&](const Vector& p, int dir, auto&& f) {
        return (f(shifted(p, dir, h)) - f(shifted(p, dir, -h))) / (2.0 * h);
    };
    const auto F = [&](const Vector& p) { return fam.log_partition(p); };
    const auto Fi = [&](const Vector& p) { return d1(p, i, F); };
    const auto Fij = [&](const Vector& p) { return d1(p, j, Fi); };
    return d1(theta, k, Fij);
}

} // namespace

double expfam_f3(const ExpFamily& fam, const Vector& theta, int i, int j, int k) {
    // One Richardson step: central differences are O(h^2), so
    // (4 D(h/2) - D(h)) / 3 cancels the leading term.
    const double coarse = f3_at_step(fam, theta, i, j, k, kF3Step);
    const double fine = f3_at_step(fam, theta, i, j, k, 0.5 * kF3Step);
    return (4.0 * fine - coarse) / 3.0;
}

ExpFamilyGeometry expfam_geometry(const ExpFamily& fam, Alpha alpha, const Vector& theta) {
    require_finite_alpha(alpha, "expfam_geometry");
    const int d = fam.dim;
    ExpFamilyGeometry out;
    out.metric = Matrix(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) out.metric(i, j) = out.metric(j, i) = expfam_f2(fam, theta, i, j);

    const double half = 0.5 * (1.0 - alpha.value);
    out.christoffel.assign(static_cast<size_t>(d), Matrix::Zero(d, d));
    std::vector<double> f3(static_cast<size_t>(d * d * d));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = j; k < d; ++k) {
                const double v = expfam_f3(fam, theta, i, j, k);
                int idx[3] = {i, j, k};
                std::sort(idx, idx + 3);
                // fill all permutations (F_ijk is fully symmetric)
                const int perms[6][3] = {{idx[0], idx[1], idx[2]}, {idx[0], idx[2], idx[1]},
                                         {idx[1], idx[0], idx[2]}, {idx[1], idx[2], idx[0]},
                                         {idx[2], idx[0], idx[1]}, {idx[2], idx[1], idx[0]}};
                for (const auto& p : perms)
                    f3[static_cast<size_t>((p[0] * d + p[1]) * d + p[2])] = v;
            }
    auto F3 = [&](int i, int j, int k) {
        return f3[static_cast<size_t>((i * d + j) * d + k)];
    };
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.christoffel[static_cast<size_t>(k)](i, j) = half * F3(i, j, k);

    const Matrix ginv = out.metric.inverse();
    const double coeff = 0.25 * (1.0 - alpha.value * alpha.value);
    out.curvature.d = d;
    out.curvature.coeff.assign(static_cast<size_t>(d * d * d * d), 0.0);
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double acc = 0.0;
                    for (int r = 0; r < d; ++r)
                        for (int m = 0; m < d; ++m)
                            for (int s = 0; s < d; ++s)
                                acc += ginv(r, m) * ginv(s, l) *
                                       (F3(i, k, m) * F3(j, r, s) - F3(j, k, m) * F3(i, r, s));
                    out.curvature.at(l, i, j, k) = coeff * acc;
                }
    return out;
}

CurvatureTensor expfam_curvature_fd(const ExpFamily& fam, Alpha alpha, const Vector& theta,
                                    double step) {
    const int d = fam.dim;
    // Christoffels of the second kind at a probe point.
    auto gamma2 = [&](const Vector& p) {
        const ExpFamilyGeometry geo = expfam_geometry(fam, alpha, p);
        const Matrix ginv = geo.metric.inverse();
        std::vector<Matrix> g2(static_cast<size_t>(d), Matrix::Zero(d, d));
        for (int l = 0; l < d; ++l)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double acc = 0.0;
                    for (int m = 0; m < d; ++m)
                        acc += ginv(l, m) * geo.christoffel[static_cast<size_t>(m)](i, j);
                    g2[static_cast<size_t>(l)](i, j) = acc;
                }
        return g2;
    };

    const auto g2_0 = gamma2(theta);
    std::vector<std::vector<Matrix>> dg2(static_cast<size_t>(d));
    for (int a = 0; a < d; ++a) {
        const auto plus = gamma2(shifted(theta, a, step));
        const auto minus = gamma2(shifted(theta, a, -step));
        dg2[static_cast<size_t>(a)].resize(static_cast<size_t>(d));
        for (int l = 0; l < d; ++l)
            dg2[static_cast<size_t>(a)][static_cast<size_t>(l)] =
                (plus[static_cast<size_t>(l)] - minus[static_cast<size_t>(l)]) / (2.0 * step);
    }

    CurvatureTensor R;
    R.d = d;
    R.coeff.assign(static_cast<size_t>(d * d * d * d), 0.0);
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double acc = dg2[static_cast<size_t>(i)][static_cast<size_t>(l)](j, k) -
                                 dg2[static_cast<size_t>(j)][static_cast<size_t>(l)](i, k);
                    for (int m = 0; m < d; ++m)
                        acc += g2_0[static_cast<size_t>(l)](i, m) * g2_0[static_cast<size_t>(m)](j, k) -
                               g2_0[static_cast<size_t>(l)](j, m) * g2_0[static_cast<size_t>(m)](i, k);
                    R.at(l, i, j, k) = acc;
                }
    return R;
}

Matrix dual_metric(const ExpFamily& fam, const Vector& theta) {
    Matrix g(fam.dim, fam.dim);
    for (int i = 0; i < fam.dim; ++i)
        for (int j = i; j < fam.dim; ++j) g(i, j) = g(j, i) = expfam_f2(fam, theta, i, j);
    return g * g;
}

double metric_compat_residual(const ExpFamily& fam, Alpha alpha,
                              const std::function<Matrix(const Vector&)>& metric,
                              const Vector& theta, double step) {
    const int d = fam.dim;
    const ExpFamilyGeometry geo = expfam_geometry(fam, alpha, theta);
    const Matrix ginv = geo.metric.inverse();
    const Matrix g0 = metric(theta);

    // Gamma^m_{ki} with the Fisher metric raising the index.
    auto gamma2 = [&](int m, int k, int i) {
        double acc = 0.0;
        for (int r = 0; r < d; ++r) acc += ginv(m, r) * geo.christoffel[static_cast<size_t>(r)](k, i);
        return acc;
    };

    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
        const Matrix gp = metric(shifted(theta, k, step));
        const Matrix gm = metric(shifted(theta, k, -step));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double lhs = (gp(i, j) - gm(i, j)) / (2.0 * step);
                double rhs = 0.0;
                for (int m = 0; m < d; ++m)
                    rhs += gamma2(m, k, i) * g0(m, j) + gamma2(m, k, j) * g0(m, i);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    }
    return worst;
}

MetricityVerdict metricity_check(const ExpFamily& fam, Alpha alpha,
                                 std::span<const Vector> theta_probes) {
    require_finite_alpha(alpha, "metricity_check");
    if (fam.dim != 2)
        throw ContractViolation("metricity_check: decision procedure is stated for dim 2 only");
    if (theta_probes.size() < 2)
        throw ContractViolation("metricity_check: need at least two probes");

    MetricityVerdict out;

    // Flatness scan with the alpha = 0 curvature (the family is flat for
    // every alpha iff it is flat for alpha = 0, since the coefficient
    // only rescales the same array).
    double flat_scale = 0.0;
    for (const Vector& theta : theta_probes) {
        const ExpFamilyGeometry geo = expfam_geometry(fam, Alpha{0.0}, theta);
        flat_scale = std::max(flat_scale, geo.curvature.max_abs());
    }
    if (flat_scale < 1e-6) {
        out.verdict = MetricityVerdict::Kind::FlatAllAlpha;
        out.conformal_consistent = true;
        return out;
    }

    if (alpha.value == 1.0 || alpha.value == 0.0 || alpha.value == -1.0) {
        std::function<Matrix(const Vector&)> candidate;
        if (alpha.value == 1.0) {
            candidate = [&](const Vector&) { return Matrix::Identity(2, 2).eval(); };
            out.verdict = MetricityVerdict::Kind::MetricTrivially;
        } else if (alpha.value == 0.0) {
            candidate = [&](const Vector& p) {
                Matrix g(2, 2);
                for (int i = 0; i < 2; ++i)
                    for (int j = i; j < 2; ++j) g(i, j) = g(j, i) = expfam_f2(fam, p, i, j);
                return g;
            };
            out.verdict = MetricityVerdict::Kind::MetricFR;
        } else {
            candidate = [&](const Vector& p) { return dual_metric(fam, p); };
            out.verdict = MetricityVerdict::Kind::MetricDual;
        }
        for (const Vector& theta : theta_probes)
            out.compat_residual =
                std::max(out.compat_residual, metric_compat_residual(fam, alpha, candidate, theta));
        out.conformal_consistent = true;
        return out;
    }

    // Generic alpha: the curvature obstruction.  At each probe, assemble
    // the compatibility system, check its nullspace is the conformal
    // class of the Fisher metric, and test the conformal-factor ratio
    // conditions on the third derivatives of F.
    int ratio_failures = 0;
    for (const Vector& theta : theta_probes) {
        const ExpFamilyGeometry geo = expfam_geometry(fam, alpha, theta);
        out.a = geo.curvature(0, 0, 1, 0);
        out.b = geo.curvature(1, 0, 1, 0);
        out.c = geo.curvature(0, 0, 1, 1);
        out.d = geo.curvature(1, 0, 1, 1);

        Eigen::Matrix3d M;
        M << out.a, out.b, 0.0,
            -out.c, -(out.a + out.d), -out.b,
            0.0, out.c, out.d;
        const Eigen::JacobiSVD<Eigen::Matrix3d> svd(M, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double scale = sv(0);
        out.nullspace_dim = 0;
        for (int s = 0; s < 3; ++s)
            if (sv(s) < 1e-6 * std::max(scale, 1e-30)) ++out.nullspace_dim;
        out.nullspace_basis = svd.matrixV().col(2);
        if (out.nullspace_dim != 1)
            throw ContractViolation("metricity_check: compatibility system is degenerate");

        Eigen::Vector3d conf(geo.metric(0, 0), geo.metric(0, 1), geo.metric(1, 1));
        conf.normalize();
        if (std::abs(std::abs(conf.dot(out.nullspace_basis)) - 1.0) > 1e-6)
            throw ContractViolation(
                "metricity_check: nullspace is not the conformal class of the Fisher metric");

        // Ratio conditions: F_11i/F_11 == F_12i/F_12 == F_22i/F_22 for
        // i = 1, 2.  A conformal factor exists only if they hold.  Tested
        // in cross-multiplied form so near-zero Hessian entries do not
        // blow up the comparison.
        const double f11 = geo.metric(0, 0), f12 = geo.metric(0, 1), f22 = geo.metric(1, 1);
        bool consistent = true;
        for (int i = 0; i < 2 && consistent; ++i) {
            const double t11 = expfam_f3(fam, theta, 0, 0, i);
            const double t12 = expfam_f3(fam, theta, 0, 1, i);
            const double t22 = expfam_f3(fam, theta, 1, 1, i);
            const auto proportional = [](double p, double q, double r, double s) {
                // p/q == r/s, cross-multiplied with a relative tolerance.
                const double scale =
                    std::max({std::abs(p * s), std::abs(r * q), std::abs(q * s), 1e-12});
                return std::abs(p * s - r * q) <= 1e-3 * scale;
            };
            if (!proportional(t11, f11, t12, f12) || !proportional(t11, f11, t22, f22) ||
                !proportional(t12, f12, t22, f22))
                consistent = false;
        }
        if (!consistent) ++ratio_failures;
    }

    if (ratio_failures >= 2) {
        out.verdict = MetricityVerdict::Kind::NonMetric;
        out.conformal_consistent = false;
        return out;
    }
    // Degenerate branch: ratios consistent at nearly all probes would
    // force a singular Fisher metric, contradicting the family's own
    // nondegeneracy; surface it loudly instead of guessing.
    throw ContractViolation(
        "metricity_check: conformal ratios consistent across probes (degenerate family)");
}

} // namespace alphafr
