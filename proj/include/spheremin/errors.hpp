#pragma once

#include <stdexcept>
#include <string>

namespace spheremin {

// Precondition failures on arguments (n < 1, rate <= 0, samples < 2, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidTolerance : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// The survival-power integral could not be certified below the requested
// tolerance. For heavy tails this is the divergent-expectation case.
class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Hypothesis { density, tail };

// A hypothesis of the minimum-asymptotics law fails for the given distribution.
class HypothesisViolated : public std::runtime_error {
public:
    HypothesisViolated(Hypothesis which, const std::string& what)
        : std::runtime_error(what), which_(which) {}

    [[nodiscard]] Hypothesis which() const noexcept { return which_; }

private:
    Hypothesis which_;
};

}  // namespace spheremin
