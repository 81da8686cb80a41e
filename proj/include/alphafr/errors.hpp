#ifndef ALPHAFR_ERRORS_HPP
#define ALPHAFR_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace alphafr {

/// Mismatched array lengths or fields living on different grids.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid construction parameters (grid too small, malformed config, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Chart inversion applied to a point outside the chart image.
class OutOfChartError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class TauTerminal {
    ReachedTauTarget,
    PositivityLoss,
    TauBlowup,
    MaxTime,
};

const char* to_string(TauTerminal t);

/// A geodesic was evaluated at or past the end of its maximal interval.
/// Carries the blowup time (infinite when the escape came from an ODE
/// terminal event rather than a closed-form root) and, when produced by
/// the tau solver, the terminal flag that ended integration.
class GeodesicEscape : public std::runtime_error {
public:
    GeodesicEscape(const std::string& msg, double blowup_time,
                   TauTerminal terminal = TauTerminal::PositivityLoss)
        : std::runtime_error(msg), blowup_time_(blowup_time), terminal_(terminal) {}

    double blowup_time() const { return blowup_time_; }
    TauTerminal terminal() const { return terminal_; }

private:
    double blowup_time_;
    TauTerminal terminal_;
};

} // namespace alphafr

#endif
