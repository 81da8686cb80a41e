#include "alphafr/fd.hpp"

#include <algorithm>
#include <cmath>

#include "alphafr/errors.hpp"

namespace alphafr {

namespace {

// Constant extension: clamp index into [0, n-1].
inline double at(std::span<const double> u, long i) {
    const long n = static_cast<long>(u.size());
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return u[static_cast<size_t>(i)];
}

} // namespace

std::vector<double> deriv1_4th(std::span<const double> u, double dx) {
    std::vector<double> d(u.size());
    const double c = 1.0 / (12.0 * dx);
    for (long i = 0; i < static_cast<long>(u.size()); ++i)
        d[static_cast<size_t>(i)] =
            c * (at(u, i - 2) - 8.0 * at(u, i - 1) + 8.0 * at(u, i + 1) - at(u, i + 2));
    return d;
}

std::vector<double> deriv2_4th(std::span<const double> u, double dx) {
    std::vector<double> d(u.size());
    const double c = 1.0 / (12.0 * dx * dx);
    for (long i = 0; i < static_cast<long>(u.size()); ++i)
        d[static_cast<size_t>(i)] = c * (-at(u, i - 2) + 16.0 * at(u, i - 1) - 30.0 * at(u, i) +
                                         16.0 * at(u, i + 1) - at(u, i + 2));
    return d;
}

std::vector<double> deriv3_4th(std::span<const double> u, double dx) {
    std::vector<double> d(u.size());
    const double c = 1.0 / (8.0 * dx * dx * dx);
    for (long i = 0; i < static_cast<long>(u.size()); ++i)
        d[static_cast<size_t>(i)] =
            c * (at(u, i - 3) - 8.0 * at(u, i - 2) + 13.0 * at(u, i - 1) - 13.0 * at(u, i + 1) +
                 8.0 * at(u, i + 2) - at(u, i + 3));
    return d;
}

std::vector<double> cumint4(std::span<const double> f, double dx) {
    const size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) throw DimensionError("cumint4: need at least four nodes");
    const double c = dx / 24.0;
    for (size_t k = 0; k + 1 < n; ++k) {
        double cell;
        if (k == 0) {
            cell = c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        } else if (k + 2 >= n) {
            cell = c * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
        } else {
            cell = c * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
        }
        out[k + 1] = out[k] + cell;
    }
    return out;
}

CubicHermite::CubicHermite(std::vector<double> xs, std::vector<double> values,
                           std::vector<double> slopes)
    : xs_(std::move(xs)), values_(std::move(values)), slopes_(std::move(slopes)) {
    if (xs_.size() != values_.size() || xs_.size() != slopes_.size() || xs_.size() < 2)
        throw DimensionError("CubicHermite: inconsistent arrays");
    for (size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw DomainError("CubicHermite: abscissae must be strictly increasing");
}

size_t CubicHermite::find_cell(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    size_t k = static_cast<size_t>(std::max<long>(0, (it - xs_.begin()) - 1));
    if (k > xs_.size() - 2) k = xs_.size() - 2;
    return k;
}

double CubicHermite::eval(double x) const {
    // Linear extension beyond the data, matching pinned tails.
    if (x <= xs_.front()) return values_.front() + slopes_.front() * (x - xs_.front());
    if (x >= xs_.back()) return values_.back() + slopes_.back() * (x - xs_.back());
    const size_t k = find_cell(x);
    const double hx = xs_[k + 1] - xs_[k];
    const double s = (x - xs_[k]) / hx;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * values_[k] + h10 * hx * slopes_[k] + h01 * values_[k + 1] +
           h11 * hx * slopes_[k + 1];
}

bool CubicHermite::monotone_increasing() const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (!(values_[i] > values_[i - 1])) return false;
    for (double s : slopes_)
        if (!(s > 0.0)) return false;
    return true;
}

double CubicHermite::invert(double target) const {
    if (target <= values_.front())
        return xs_.front() + (target - values_.front()) / slopes_.front();
    if (target >= values_.back())
        return xs_.back() + (target - values_.back()) / slopes_.back();
    // Bracket by nodal values (increasing), then Newton with bisection
    // safeguard inside the cell.
    const auto it = std::upper_bound(values_.begin(), values_.end(), target);
    size_t k = static_cast<size_t>(std::max<long>(0, (it - values_.begin()) - 1));
    if (k > xs_.size() - 2) k = xs_.size() - 2;
    double lo = xs_[k], hi = xs_[k + 1];
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double fx = eval(x) - target;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        // Local derivative of the Hermite cell.
        const double hx = xs_[k + 1] - xs_[k];
        const double s = (x - xs_[k]) / hx;
        const double d = (6 * s * s - 6 * s) * (values_[k] - values_[k + 1]) / hx +
                         (3 * s * s - 4 * s + 1) * slopes_[k] + (3 * s * s - 2 * s) * slopes_[k + 1];
        double x_new = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(x_new > lo) || !(x_new < hi)) x_new = 0.5 * (lo + hi);
        if (std::abs(x_new - x) < 1e-15 * (1.0 + std::abs(x))) return x_new;
        x = x_new;
    }
    return x;
}

} // namespace alphafr
