#pragma once

// Continuous primitives: the only representation of initial data. An element
// f of A_c is carried as F with F' = f in the distributional sense and
// F(-infinity) = 0; higher-order and weighted-growth data reuse the same type.

#include "heatdist/realline.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace heatdist {

// |F| bounded on R.
struct BoundedGrowth {};
// |F(x)| exp(-x^2 / (4 tau)) bounded; tau = +infinity marks sub-Gaussian
// (e.g. polynomial) growth.
struct WeightedGrowth {
    double tau;
};
using Growth = std::variant<BoundedGrowth, WeightedGrowth>;

using ParamMap = std::map<std::string, double>;

class Primitive {
public:
    struct Spec {
        std::string name;
        RealFn eval;
        std::optional<double> limit_neg;  // 0 for members of B_c
        std::optional<double> limit_pos;
        Growth growth = BoundedGrowth{};
        std::optional<RealFn> density;    // pointwise f where it exists
        realline::DecayHint density_decay = realline::DecayHint::none();
        std::optional<double> variation;  // exact total variation when known
        std::optional<std::pair<double, double>> support;
        std::vector<double> breakpoints;  // kinks worth seeding quadrature with
    };

    explicit Primitive(Spec spec);

    double operator()(double x) const { return spec_->eval(x); }
    const std::string& name() const noexcept { return spec_->name; }
    const std::optional<double>& limit_neg() const noexcept { return spec_->limit_neg; }
    const std::optional<double>& limit_pos() const noexcept { return spec_->limit_pos; }
    const Growth& growth() const noexcept { return spec_->growth; }
    const std::optional<RealFn>& density() const noexcept { return spec_->density; }
    const realline::DecayHint& density_decay() const noexcept { return spec_->density_decay; }
    const std::optional<double>& variation() const noexcept { return spec_->variation; }
    const std::optional<std::pair<double, double>>& support() const noexcept { return spec_->support; }
    const std::vector<double>& breakpoints() const noexcept { return spec_->breakpoints; }

    bool bounded() const noexcept { return std::holds_alternative<BoundedGrowth>(spec_->growth); }
    // Growth exponent tau of the weighted class; +infinity for bounded primitives.
    double growth_tau() const noexcept;
    // Continuous on the extended line with F(-infinity) = 0.
    bool in_bc() const noexcept;

private:
    std::shared_ptr<const Spec> spec_;
};

struct AlexSpace {};
struct AlexNSpace {};
struct WeightedSpace {
    double tau;
};
using Space = std::variant<AlexSpace, AlexNSpace, WeightedSpace>;

std::string describe(const Space& space);

// f = F^{(order)} in A_c (order 1), A^n_c (order >= 2) or A_{c,tau} (order 1).
class DistributionalData {
public:
    DistributionalData(int order, Primitive primitive, Space space);

    int order() const noexcept { return order_; }
    const Primitive& primitive() const noexcept { return primitive_; }
    const Space& space() const noexcept { return space_; }
    bool weighted() const noexcept { return std::holds_alternative<WeightedSpace>(space_); }
    // tau of the weighted space; throws for the unweighted spaces.
    double tau() const;

private:
    int order_;
    Primitive primitive_;
    Space space_;
};

namespace primitives {

// Named constructors: zero, gauss (Theta_s itself), gauss-cdf, step-ramp,
// ramp (a, b), cantor, weierstrass-damped (a, b, terms), alg-sing (alpha),
// fresnel-cos / fresnel-sin (s), neg-gauss (s), sin (s), poly (n),
// hermite (n), non-lp (s, N, t0).
Primitive make_closed_form(const std::string& name, const ParamMap& params = {});

std::vector<std::string> closed_form_names();

// Cantor-Lebesgue function at clamp(x, 0, 1) from the ternary digits of x.
double cantor_eval(double x, int depth = 64);

// sum_{k < K} a^k cos(b^k pi x) with a^K / (1 - a) < tol.
double weierstrass_eval(double x, double a = 0.5, int b = 13, double tol = 1e-12);
// Number of terms used by weierstrass_eval for (a, tol).
int weierstrass_terms(double a, double tol);
// Fixed-length partial sum, used by the damped catalog primitive.
double weierstrass_partial(double x, double a, int b, int terms);

// Piecewise-linear interpolant of ordered samples, clamped to the declared
// limits outside the sampled range.
Primitive from_samples(const std::vector<std::pair<double, double>>& points, double limit_neg,
                       double limit_pos, double tol = 1e-9);

// Two-column "x,value" CSV with an optional header line.
std::vector<std::pair<double, double>> read_samples_csv(const std::string& path);

// F(x) = int_{-infinity}^x density, cached on a panel grid over the hint window.
Primitive accumulate(const RealFn& density, const realline::DecayHint& hint,
                     double tol = realline::kDefaultQuadratureTol);

}  // namespace primitives
}  // namespace heatdist
