#pragma once

// The solver u_t = f * Theta_t, always computed against the primitive:
// f^{(n)} * Theta_t = F * Theta_t^{(n)}.

#include "heatdist/primitives.hpp"
#include "heatdist/spaces.hpp"

#include <cstddef>

namespace heatdist {

struct SolveOptions {
    double tol = realline::kDefaultQuadratureTol;
    std::size_t max_intervals = realline::kDefaultMaxIntervals;
};

// Pair of sides of an identity or estimate, for assertion by the caller.
struct CheckPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

namespace evolve {

// K_m(x) = int F(xi) Theta_t^{(m)}(x - xi) dxi. Throws OutOfHorizon when the
// integral diverges (weighted data with t >= tau).
double kernel_integral(const DistributionalData& data, double t, double x, int m,
                       const SolveOptions& opts = {});

double convolve(const DistributionalData& data, double t, double x,
                double tol = realline::kDefaultQuadratureTol);
// d^k/dx^k d^j/dt^j u, using d/dt Theta = Theta''.
double solution_derivative(const DistributionalData& data, double t, double x, int k, int j,
                           double tol = realline::kDefaultQuadratureTol);
// F * Theta_t: the B_c primitive of u_t (bounded data only).
double solution_primitive(const DistributionalData& data, double t, double x,
                          double tol = realline::kDefaultQuadratureTol);

// ||u_t - f|| (or ||.||^{(n)}) as sup - inf of F * Theta_t - F.
NormReport convergence_norm(const DistributionalData& data, double t, const SolveOptions& opts = {});
// ||u_t - f||_sigma by direct quadrature of (u_t - f) omega_sigma; needs a density.
NormReport weighted_convergence_norm(const DistributionalData& data, double sigma, double t,
                                     const SolveOptions& opts = {});

// sup - inf of K_m over the extended line (bounded data). m = 0 gives the norm
// of u_t in the alex sense; for order n data, m = n - k gives ||u_t||^{(k)}.
NormReport field_norm(const DistributionalData& data, double t, int m, const SolveOptions& opts = {});
// sup |K_m| over the extended line (bounded data).
double field_sup(const DistributionalData& data, double t, int m, const SolveOptions& opts = {});
// ||u_t||_sigma for weighted data.
NormReport solution_weighted_norm(const DistributionalData& data, double sigma, double t,
                                  const SolveOptions& opts = {});

// (sup |u_t|, ||f|| / (2 sqrt(pi t)))
CheckPair sup_norm_estimate_check(const DistributionalData& data, double t, const SolveOptions& opts = {});
// (int u_t, F(inf) for order 1 else 0)
CheckPair mass_check(const DistributionalData& data, double t, const SolveOptions& opts = {});
// (int u_t Theta_sigma, int f Theta_{sigma + t})
CheckPair weighted_pairing_check(const DistributionalData& data, double sigma, double t,
                                 const SolveOptions& opts = {});

}  // namespace evolve

// u(., t) with derivative and primitive access; cheap to copy.
class SolutionField {
public:
    SolutionField(DistributionalData data, double t, SolveOptions opts = {});

    double operator()(double x) const;
    double derivative(double x, int k, int j = 0) const;
    double primitive(double x) const;
    // The B_c primitive of u_t as a Primitive (bounded data only).
    Primitive as_primitive() const;

    const DistributionalData& data() const noexcept { return data_; }
    double t() const noexcept { return t_; }

private:
    DistributionalData data_;
    double t_;
    SolveOptions opts_;
};

}  // namespace heatdist
