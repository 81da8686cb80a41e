#ifndef ALPHAFR_ODE_HPP
#define ALPHAFR_ODE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <utility>

#include "alphafr/errors.hpp"

namespace alphafr {

/// Dormand-Prince 5(4) step controller for small fixed-size systems.
/// The right-hand side may signal an inadmissible state (e.g. a power of
/// a non-positive base) by returning false; the controller then shrinks
/// the step instead of propagating NaNs.
template <std::size_t N>
class DormandPrince {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<bool(double t, const State& y, State& dydt)>;

    struct Controls {
        double rel_tol = 1e-10;
        double abs_tol = 1e-12;
        double h_init = 1e-4;
        double h_min = 1e-14;
        double h_max = 1.0;
    };

    DormandPrince(Rhs rhs, Controls controls) : rhs_(std::move(rhs)), c_(controls) {}

    /// One accepted step from (t, y).  The step never crosses t_limit;
    /// when it lands on the cap, t is set to t_limit exactly so callers
    /// can compare times without tolerance fudging.  Returns false if the
    /// step size underflows away from the cap (the trajectory is pinned,
    /// e.g. against a positivity boundary).
    bool step(double& t, State& y, double& h_io, double t_limit) {
        double h = std::min(h_io, c_.h_max);
        for (int attempt = 0; attempt < 200; ++attempt) {
            double h_try = h;
            bool capped = false;
            if (t + h_try >= t_limit) {
                h_try = t_limit - t;
                capped = true;
            }
            if (capped && h_try <= 0.0) {
                t = t_limit;
                return true;
            }
            if (!capped && h_try < c_.h_min) return false;
            State y_new, err;
            if (try_step(t, y, h_try, y_new, err)) {
                double scale = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    const double tol =
                        c_.abs_tol + c_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                    scale = std::max(scale, std::abs(err[i]) / tol);
                }
                if (scale <= 1.0) {
                    t = capped ? t_limit : t + h_try;
                    y = y_new;
                    const double grow =
                        (scale <= 1e-30) ? 5.0 : std::min(5.0, 0.9 * std::pow(scale, -0.2));
                    double next = h_try * grow;
                    // A cap is not an error-control verdict; keep the old
                    // suggestion alive when it was larger.
                    if (capped) next = std::max(next, h);
                    h_io = std::min(next, c_.h_max);
                    return true;
                }
                h = h_try * std::max(0.1, 0.9 * std::pow(scale, -0.2));
            } else {
                h = h_try * 0.25;
                if (h < c_.h_min) return false;
            }
        }
        return false;
    }

private:
    // Butcher tableau (Dormand & Prince, order 5 with embedded order 4).
    bool try_step(double t, const State& y, double h, State& y_new, State& err) {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                                e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

        State k1, k2, k3, k4, k5, k6, k7, tmp;
        if (!rhs_(t, y, k1)) return false;
        auto stage = [&](State& out, std::initializer_list<std::pair<const State*, double>> terms) {
            out = y;
            for (const auto& [k, c] : terms)
                for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
        };
        stage(tmp, {{&k1, a21}});
        if (!rhs_(t + h / 5, tmp, k2)) return false;
        stage(tmp, {{&k1, a31}, {&k2, a32}});
        if (!rhs_(t + 3 * h / 10, tmp, k3)) return false;
        stage(tmp, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
        if (!rhs_(t + 4 * h / 5, tmp, k4)) return false;
        stage(tmp, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
        if (!rhs_(t + 8 * h / 9, tmp, k5)) return false;
        stage(tmp, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
        if (!rhs_(t + h, tmp, k6)) return false;
        stage(y_new, {{&k1, b1}, {&k3, b3}, {&k4, b4}, {&k5, b5}, {&k6, b6}});
        if (!rhs_(t + h, y_new, k7)) return false;
        for (std::size_t i = 0; i < N; ++i) {
            const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                          e6 * k6[i] + e7 * k7[i]);
            err[i] = y_new[i] - y4;
            if (!std::isfinite(y_new[i])) return false;
        }
        return true;
    }

    Rhs rhs_;
    Controls c_;
};

} // namespace alphafr

#endif
