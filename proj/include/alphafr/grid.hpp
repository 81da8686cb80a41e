#ifndef ALPHAFR_GRID_HPP
#define ALPHAFR_GRID_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "alphafr/errors.hpp"

namespace alphafr {

/// Quadrature tolerance for unit-mass and zero-mean membership tests.
inline constexpr double kMassTol = 1e-10;

enum class GridKind { Periodic, Line };

/// One-dimensional discretization of the sample space together with the
/// quadrature weights that represent integration against the reference
/// density.  Periodic grids cover [0,1) with uniform nodes and total
/// weight one (the reference is a probability density); line grids cover
/// [-L,L] with trapezoid weights (Lebesgue reference) and carry a compact
/// support window [-s,s] outside of which fields sit at their asymptotic
/// values.
///
/// Immutable after construction; safe to share across threads.
class Grid1D {
public:
    static Grid1D periodic(int n);
    static Grid1D line(int n, double half_length, double support);

    /// Build from a JSON config object:
    ///   {"kind":"periodic","n":128}
    ///   {"kind":"line","n":512,"L":10.0,"support":4.0}
    static Grid1D from_json_text(const std::string& text);

    GridKind kind() const { return kind_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    double weight(int i) const { return weights_[static_cast<size_t>(i)]; }
    double spacing() const { return spacing_; }

    /// Line grids only: domain half-length L and support half-width s.
    double half_length() const { return half_length_; }
    double support() const { return support_; }
    bool in_support(double x) const { return x >= -support_ && x <= support_; }

    /// Weighted sum realizing the integral of f against the reference
    /// density.  On periodic grids this is the trapezoid rule, spectrally
    /// accurate for smooth periodic integrands.
    double integrate(std::span<const double> f) const;

    double total_weight() const { return total_weight_; }

private:
    Grid1D() = default;

    GridKind kind_ = GridKind::Periodic;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double spacing_ = 0.0;
    double half_length_ = 0.0;
    double support_ = 0.0;
    double total_weight_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid1D>;

GridPtr make_periodic(int n);
GridPtr make_line(int n, double half_length, double support);
GridPtr grid_from_json_text(const std::string& text);

/// Throws DimensionError unless both fields live on the same grid object
/// (grids are shared immutable values, so pointer identity is the test).
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);

/// Positive density relative to the grid's reference: h_i = (mu/lambda)(x_i).
class Density {
public:
    Density(GridPtr grid, std::vector<double> h);

    const Grid1D& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return grid_->size(); }
    const std::vector<double>& h() const { return h_; }
    double h(int i) const { return h_[static_cast<size_t>(i)]; }

    /// Total mass against the reference.
    double mass() const { return grid_->integrate(h_); }
    bool is_prob(double tol = kMassTol) const;

private:
    GridPtr grid_;
    std::vector<double> h_;
};

/// Tangent vector at a density: r_i = (a/lambda)(x_i).
class Tangent {
public:
    Tangent(GridPtr grid, std::vector<double> r);

    static Tangent zero(GridPtr grid);

    const Grid1D& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int size() const { return grid_->size(); }
    const std::vector<double>& r() const { return r_; }
    double r(int i) const { return r_[static_cast<size_t>(i)]; }

    /// Integral of the tangent against the reference.
    double weighted_sum() const { return grid_->integrate(r_); }
    bool is_prob_tangent(double tol = kMassTol) const;

private:
    GridPtr grid_;
    std::vector<double> r_;
};

} // namespace alphafr

#endif
