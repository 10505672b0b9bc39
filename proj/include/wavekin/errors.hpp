#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavekin {

/// Input violates a documented precondition or hypothesis.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved, std::vector<double> per_node = {})
        : std::runtime_error(what), achieved_(achieved), per_node_(std::move(per_node))
    {
    }
    double achieved() const noexcept { return achieved_; }
    const std::vector<double>& per_node() const noexcept { return per_node_; }

private:
    double achieved_;
    std::vector<double> per_node_;
};

/// Time integration left its trusted regime (blow-up, wrap-around).
class NumericalAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wavekin
