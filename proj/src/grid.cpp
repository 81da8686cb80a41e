#include "alphafr/grid.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace alphafr {

const char* to_string(TauTerminal t) {
    switch (t) {
        case TauTerminal::ReachedTauTarget: return "reached_tau_target";
        case TauTerminal::PositivityLoss: return "positivity_loss";
        case TauTerminal::TauBlowup: return "tau_blowup";
        case TauTerminal::MaxTime: return "max_time";
    }
    return "unknown";
}

Grid1D Grid1D::periodic(int n) {
    if (n < 8) throw ConfigError("periodic grid needs n >= 8");
    Grid1D g;
    g.kind_ = GridKind::Periodic;
    g.nodes_.resize(static_cast<size_t>(n));
    g.weights_.assign(static_cast<size_t>(n), 1.0 / n);
    for (int i = 0; i < n; ++i) g.nodes_[static_cast<size_t>(i)] = static_cast<double>(i) / n;
    g.spacing_ = 1.0 / n;
    g.half_length_ = 0.0;
    g.support_ = 0.0;
    g.total_weight_ = 1.0;
    return g;
}

Grid1D Grid1D::line(int n, double half_length, double support) {
    if (n < 8) throw ConfigError("line grid needs n >= 8");
    if (!(half_length > 0.0) || !(support > 0.0) || support >= half_length)
        throw ConfigError("line grid needs 0 < support < L");
    Grid1D g;
    g.kind_ = GridKind::Line;
    g.nodes_.resize(static_cast<size_t>(n));
    g.weights_.resize(static_cast<size_t>(n));
    const double dx = 2.0 * half_length / (n - 1);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        g.nodes_[static_cast<size_t>(i)] = -half_length + i * dx;
        const double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
        g.weights_[static_cast<size_t>(i)] = w;
        total += w;
    }
    g.spacing_ = dx;
    g.half_length_ = half_length;
    g.support_ = support;
    g.total_weight_ = total;
    return g;
}

Grid1D Grid1D::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad grid config: ") + e.what());
    }
    const std::string kind = j.value("kind", "");
    if (kind == "periodic") {
        if (!j.contains("n")) throw ConfigError("periodic grid config needs \"n\"");
        return periodic(j.at("n").get<int>());
    }
    if (kind == "line") {
        if (!j.contains("n") || !j.contains("L") || !j.contains("support"))
            throw ConfigError("line grid config needs \"n\", \"L\", \"support\"");
        return line(j.at("n").get<int>(), j.at("L").get<double>(), j.at("support").get<double>());
    }
    throw ConfigError("grid config \"kind\" must be \"periodic\" or \"line\"");
}

double Grid1D::integrate(std::span<const double> f) const {
    if (f.size() != nodes_.size()) throw DimensionError("integrate: length mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) acc += weights_[i] * f[i];
    return acc;
}

GridPtr make_periodic(int n) { return std::make_shared<Grid1D>(Grid1D::periodic(n)); }

GridPtr make_line(int n, double half_length, double support) {
    return std::make_shared<Grid1D>(Grid1D::line(n, half_length, support));
}

GridPtr grid_from_json_text(const std::string& text) {
    return std::make_shared<Grid1D>(Grid1D::from_json_text(text));
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
    if (a.get() != b.get())
        throw DimensionError(std::string(where) + ": fields live on different grids");
}

Density::Density(GridPtr grid, std::vector<double> h)
    : grid_(std::move(grid)), h_(std::move(h)) {
    if (static_cast<int>(h_.size()) != grid_->size())
        throw DimensionError("Density: value array does not match grid size");
    for (double v : h_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("Density: values must be positive and finite");
}

bool Density::is_prob(double tol) const { return std::abs(mass() - 1.0) <= tol; }

Tangent::Tangent(GridPtr grid, std::vector<double> r)
    : grid_(std::move(grid)), r_(std::move(r)) {
    if (static_cast<int>(r_.size()) != grid_->size())
        throw DimensionError("Tangent: value array does not match grid size");
    for (double v : r_)
        if (!std::isfinite(v)) throw DomainError("Tangent: values must be finite");
}

Tangent Tangent::zero(GridPtr grid) {
    const size_t n = static_cast<size_t>(grid->size());
    return Tangent(std::move(grid), std::vector<double>(n, 0.0));
}

bool Tangent::is_prob_tangent(double tol) const { return std::abs(weighted_sum()) <= tol; }

} // namespace alphafr
