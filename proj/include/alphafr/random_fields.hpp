#ifndef ALPHAFR_RANDOM_FIELDS_HPP
#define ALPHAFR_RANDOM_FIELDS_HPP

#include <cstdint>
#include <random>

#include "alphafr/grid.hpp"

namespace alphafr {

/// Deterministic uniform in [lo, hi); the explicit bit mapping keeps
/// draws identical across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi);

/// Smooth periodic field: a few low harmonics with coefficients decaying
/// like 1/k^2, scaled to `amplitude`, plus `mean`.
std::vector<double> smooth_periodic_field(const Grid1D& grid, std::mt19937_64& rng,
                                          double amplitude, double mean);

/// Random positive density h = 1 + amplitude * (smooth field), optionally
/// normalized to unit mass.  amplitude must stay below 1.
Density random_density(const GridPtr& grid, std::mt19937_64& rng, double amplitude,
                       bool normalize);

/// Random smooth tangent with the given amplitude and mean.
Tangent random_tangent(const GridPtr& grid, std::mt19937_64& rng, double amplitude,
                       double mean = 0.0);

/// Random smooth tangent projected to zero weighted mean.
Tangent random_prob_tangent(const GridPtr& grid, std::mt19937_64& rng, double amplitude);

} // namespace alphafr

#endif
