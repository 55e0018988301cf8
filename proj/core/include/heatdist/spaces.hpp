#pragma once

// Alexiewicz-type norms computed from primitives: sup F - inf F over the
// extended line, and the weighted norm ||f||_tau = ||f omega_tau||.

#include "heatdist/primitives.hpp"
#include "heatdist/realline.hpp"

#include <utility>

namespace heatdist {

struct NormReport {
    double value = 0.0;
    // (argument of the inf, argument of the sup), ordered; entries may be +-infinity.
    std::pair<double, double> achieved_by{0.0, 0.0};
    double refinement_error = 0.0;
};

// Gaussian weight omega_tau(x) = exp(-x^2 / (4 tau)).
struct WeightSpec {
    explicit WeightSpec(double tau_);
    double operator()(double x) const;
    double tau;
};

namespace spaces {

// sup F - inf F for any continuous F with the given limits.
NormReport primitive_norm(const RealFn& F, double limit_neg, double limit_pos,
                          const realline::ExtremumOptions& opts = {});

NormReport alex_norm(const DistributionalData& data, double tol = realline::kDefaultQuadratureTol);
NormReport alexn_norm(const DistributionalData& data, double tol = realline::kDefaultQuadratureTol);

// G(x) = int_{-inf}^x f omega, computed by parts from F. The overloads taking a
// WeightSpec measure in that weight instead of the space's own tau; the weight
// must decay strictly faster than F grows.
double weighted_primitive(const DistributionalData& data, double x,
                          double tol = realline::kDefaultQuadratureTol);
double weighted_primitive(const DistributionalData& data, const WeightSpec& weight, double x,
                          double tol = realline::kDefaultQuadratureTol);

// Reusable evaluator for G with cached cumulative panels; limit_pos() is G(+inf).
Primitive weighted_primitive_fn(const DistributionalData& data, const WeightSpec& weight,
                                double tol = realline::kDefaultQuadratureTol);

NormReport weighted_norm(const DistributionalData& data, double tol = realline::kDefaultQuadratureTol);
NormReport weighted_norm(const DistributionalData& data, const WeightSpec& weight,
                         double tol = realline::kDefaultQuadratureTol);

// ||f|| (|g(inf)| + Vg): majorant of |int f g| for g of bounded variation.
double holder_bound(const DistributionalData& data, double g_limit_pos, double g_variation,
                    double tol = realline::kDefaultQuadratureTol);

// Scan options seeded with the primitive's kinks and support ends.
realline::ExtremumOptions scan_options_for(const Primitive& F);

}  // namespace spaces
}  // namespace heatdist
