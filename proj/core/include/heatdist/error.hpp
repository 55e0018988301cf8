#pragma once

#include <stdexcept>
#include <string>

namespace heatdist {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on arguments or parameters was violated (unknown catalog key,
// gauss with s <= 0, unsorted samples, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A function evaluation returned a non-finite value.
class EvaluationFailure : public Error {
public:
    EvaluationFailure(const std::string& what, double abscissa)
        : Error(what), abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

// Adaptive refinement hit its limit; the best available estimate is attached.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

// An infinite-interval integral was requested without a usable decay envelope.
class UnsupportedDecay : public Error {
public:
    using Error::Error;
};

// Partition refinement of the total variation did not settle.
class UnboundedVariation : public Error {
public:
    UnboundedVariation(const std::string& what, double previous, double last)
        : Error(what), previous_(previous), last_(last) {}
    double previous_estimate() const noexcept { return previous_; }
    double last_estimate() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

// Weighted data evolved at or beyond its existence horizon t >= tau.
class OutOfHorizon : public Error {
public:
    using Error::Error;
};

// A weighted integral whose net Gaussian exponent is not negative.
class Divergence : public Error {
public:
    using Error::Error;
};

// A closed-form oracle was asked for a point outside its validity domain.
class OutOfValidity : public Error {
public:
    using Error::Error;
};

class RootIsolationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace heatdist
