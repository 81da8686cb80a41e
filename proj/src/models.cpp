#include <cmath>
#include <limits>

#include <json.hpp>

#include "alphafr/errors.hpp"
#include "alphafr/parametric.hpp"

namespace alphafr {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

ParamModel make_categorical(int k) {
    if (k < 2) throw ConfigError("categorical model needs at least two cells");
    ParamModel model;
    model.dim = k - 1;
    model.log_density = [k](const Vector& x, const Vector& theta) {
        double z = 1.0;
        for (int j = 0; j < k - 1; ++j) z += std::exp(theta[j]);
        const int cell = static_cast<int>(x[0]);
        const double numer = (cell == 0) ? 0.0 : theta[cell - 1];
        return numer - std::log(z);
    };
    QuadratureBackend backend;
    for (int cell = 0; cell < k; ++cell) {
        Vector p(1);
        p[0] = cell;
        backend.points.push_back(p);
        backend.weights.push_back(1.0);  // counting measure
    }
    model.backend = std::move(backend);
    return model;
}

ExpFamily make_categorical_family(int k) {
    if (k < 2) throw ConfigError("categorical family needs at least two cells");
    ExpFamily fam;
    fam.dim = k - 1;
    fam.log_partition = [k](const Vector& theta) {
        double z = 1.0;
        for (int j = 0; j < k - 1; ++j) z += std::exp(theta[j]);
        return std::log(z);
    };
    return fam;
}

ParamModel make_gaussian_natural() {
    ParamModel model;
    model.dim = 2;
    model.log_density = [](const Vector& x, const Vector& theta) {
        const double t1 = theta[0], t2 = theta[1];
        const double F = -t1 * t1 / (4.0 * t2) + 0.5 * std::log(kPi / (-t2));
        return t1 * x[0] + t2 * x[0] * x[0] - F;
    };
    // Wide uniform grid; the Gaussian tails put the truncation error far
    // below the finite-difference noise floor.
    QuadratureBackend backend;
    const int n = 4001;
    const double L = 15.0;
    const double dx = 2.0 * L / (n - 1);
    for (int i = 0; i < n; ++i) {
        Vector p(1);
        p[0] = -L + i * dx;
        backend.points.push_back(p);
        backend.weights.push_back((i == 0 || i == n - 1) ? 0.5 * dx : dx);
    }
    model.backend = std::move(backend);
    return model;
}

ExpFamily make_gaussian_natural_family() {
    ExpFamily fam;
    fam.dim = 2;
    fam.log_partition = [](const Vector& theta) {
        const double t1 = theta[0], t2 = theta[1];
        if (!(t2 < 0.0)) throw DomainError("gaussian natural family needs theta2 < 0");
        return -t1 * t1 / (4.0 * t2) + 0.5 * std::log(kPi / (-t2));
    };
    return fam;
}

ParamModel make_translation_model(TranslationBase base, int d, std::uint64_t seed, int n_samples) {
    if (d < 1) throw ConfigError("translation model needs d >= 1");
    ParamModel model;
    model.dim = d;

    switch (base) {
        case TranslationBase::Gaussian:
            model.log_density = [d](const Vector& x, const Vector& theta) {
                double acc = -0.5 * d * std::log(2.0 * kPi);
                for (int i = 0; i < d; ++i) {
                    const double y = x[i] - theta[i];
                    acc -= 0.5 * y * y;
                }
                return acc;
            };
            break;
        case TranslationBase::Laplace:
            model.log_density = [d](const Vector& x, const Vector& theta) {
                double acc = -d * std::log(2.0);
                for (int i = 0; i < d; ++i) acc -= std::abs(x[i] - theta[i]);
                return acc;
            };
            break;
        case TranslationBase::Logistic:
            model.log_density = [d](const Vector& x, const Vector& theta) {
                double acc = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double y = x[i] - theta[i];
                    acc += -y - 2.0 * std::log1p(std::exp(-y));
                }
                return acc;
            };
            break;
    }

    MonteCarloBackend backend;
    backend.seed = seed;
    backend.n_samples = n_samples;
    backend.sampler = [base, d](std::mt19937_64& rng, const Vector& theta) {
        // Explicit uniform mapping keeps draws identical across platforms.
        auto uniform = [&rng]() {
            return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        };
        Vector x(d);
        for (int i = 0; i < d; ++i) {
            const double u = uniform();
            double y = 0.0;
            switch (base) {
                case TranslationBase::Gaussian: {
                    // Box-Muller with a second independent uniform.
                    const double v = uniform();
                    y = std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
                    break;
                }
                case TranslationBase::Laplace:
                    y = (u < 0.5) ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
                    break;
                case TranslationBase::Logistic:
                    y = std::log(u / (1.0 - u));
                    break;
            }
            x[i] = y + theta[i];
        }
        return x;
    };
    model.backend = std::move(backend);
    return model;
}

ExpFamily make_gaussian_translation_family(int d) {
    ExpFamily fam;
    fam.dim = d;
    fam.log_partition = [](const Vector& theta) { return 0.5 * theta.squaredNorm(); };
    return fam;
}

ExpFamily expfamily_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad family config: ") + e.what());
    }
    const int d = j.value("d", 0);
    if (d < 1) throw ConfigError("family config needs \"d\" >= 1");

    struct Monomial {
        double coef;
        std::vector<int> powers;
    };
    std::vector<Monomial> poly;
    for (const auto& term : j.value("poly", nlohmann::json::array())) {
        Monomial m;
        m.coef = term.at("coef").get<double>();
        m.powers = term.at("powers").get<std::vector<int>>();
        if (static_cast<int>(m.powers.size()) != d)
            throw ConfigError("poly term powers must have length d");
        poly.push_back(std::move(m));
    }
    std::vector<std::vector<double>> lse;
    for (const auto& row : j.value("logsumexp", nlohmann::json::array())) {
        auto c = row.get<std::vector<double>>();
        if (static_cast<int>(c.size()) != d)
            throw ConfigError("logsumexp row must have length d");
        lse.push_back(std::move(c));
    }
    if (poly.empty() && lse.empty())
        throw ConfigError("family config needs \"poly\" or \"logsumexp\" terms");

    ExpFamily fam;
    fam.dim = d;
    fam.log_partition = [d, poly, lse](const Vector& theta) {
        double acc = 0.0;
        for (const auto& m : poly) {
            double term = m.coef;
            for (int i = 0; i < d; ++i)
                for (int p = 0; p < m.powers[static_cast<size_t>(i)]; ++p) term *= theta[i];
            acc += term;
        }
        if (!lse.empty()) {
            double zmax = -std::numeric_limits<double>::infinity();
            std::vector<double> dots(lse.size());
            for (size_t r = 0; r < lse.size(); ++r) {
                double dot = 0.0;
                for (int i = 0; i < d; ++i) dot += lse[r][static_cast<size_t>(i)] * theta[i];
                dots[r] = dot;
                zmax = std::max(zmax, dot);
            }
            double z = 0.0;
            for (double dot : dots) z += std::exp(dot - zmax);
            acc += zmax + std::log(z);
        }
        return acc;
    };
    return fam;
}

} // namespace alphafr
