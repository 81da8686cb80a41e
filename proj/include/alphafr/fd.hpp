#ifndef ALPHAFR_FD_HPP
#define ALPHAFR_FD_HPP

#include <span>
#include <vector>

namespace alphafr {

/// Fourth-order central first derivative on a uniform grid.  End values
/// are extended as constants, which is exact for fields pinned to their
/// asymptotic values near the boundary.
std::vector<double> deriv1_4th(std::span<const double> u, double dx);

/// Fourth-order central second derivative (same edge treatment).
std::vector<double> deriv2_4th(std::span<const double> u, double dx);

/// Fourth-order central third derivative (same edge treatment).
std::vector<double> deriv3_4th(std::span<const double> u, double dx);

/// Fourth-order cumulative integral on a uniform grid: out[0] = 0 and
/// out[k] = integral of the interpolating cubics from x_0 to x_k.  The
/// error is a smooth function of the endpoint, so differentiating the
/// result does not amplify it.
std::vector<double> cumint4(std::span<const double> f, double dx);

/// Cubic Hermite interpolant with caller-supplied nodal slopes on a
/// strictly increasing abscissa.  Used with exact slopes (known
/// derivative fields), which keeps differentiated quantities clean.
class CubicHermite {
public:
    CubicHermite(std::vector<double> xs, std::vector<double> values, std::vector<double> slopes);

    double eval(double x) const;

    /// Solve eval(y) == target on a strictly increasing interpolant
    /// (Newton with bisection fallback).  target must lie within range.
    double invert(double target) const;

    double front_x() const { return xs_.front(); }
    double back_x() const { return xs_.back(); }
    double front_value() const { return values_.front(); }
    double back_value() const { return values_.back(); }

    /// Strictly increasing nodal values and positive nodal slopes.
    bool monotone_increasing() const;

private:
    size_t find_cell(double x) const;

    std::vector<double> xs_, values_, slopes_;
};

} // namespace alphafr

#endif
