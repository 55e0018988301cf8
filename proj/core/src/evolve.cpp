#include "heatdist/evolve.hpp"

#include "heatdist/error.hpp"
#include "heatdist/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace heatdist {

namespace {

void check_time(const DistributionalData& data, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("evolution time must be positive and finite");
    if (data.weighted() && t >= data.tau()) {
        throw OutOfHorizon("t = " + std::to_string(t) + " is beyond the existence horizon tau = " +
                           std::to_string(data.tau()));
    }
}

void require_bounded(const DistributionalData& data, const char* who) {
    if (data.weighted() || !data.primitive().in_bc()) {
        throw InvalidArgument(std::string(who) + " needs bounded data in alex or alexn");
    }
}

// 1 / (4 tau) for finite tau, 0 for the sub-Gaussian marker.
double inverse_rate(double tau) { return std::isfinite(tau) ? 1.0 / (4.0 * tau) : 0.0; }

// Scan abscissae: the primitive's kinks, plus a few kernel widths around each
// so that narrow features at small t are sampled. Convolution smooths over a
// width of order sqrt(t), so the compactified grid thins out as t grows.
realline::ExtremumOptions scan_options(const Primitive& F, double t) {
    realline::ExtremumOptions opts = spaces::scan_options_for(F);
    opts.grid = static_cast<std::size_t>(std::clamp(std::ceil(256.0 / std::sqrt(t)), 256.0, 2048.0));
    const std::vector<double> anchors = opts.extra_points.empty() ? std::vector<double>{0.0}
                                                                  : opts.extra_points;
    const double width = std::sqrt(t);
    for (double b : anchors) {
        for (int j = -8; j <= 8; ++j) opts.extra_points.push_back(b + j * width);
    }
    return opts;
}

// Radius beyond which F sits at its limits to within tol.
double settle_radius(const Primitive& F, double tol) {
    double X = 1.0;
    if (F.support()) X = std::max({X, std::abs(F.support()->first), std::abs(F.support()->second)});
    const double lo = F.limit_neg().value_or(0.0);
    const double hi = F.limit_pos().value_or(0.0);
    for (int i = 0; i < 60; ++i) {
        if (std::abs(F(X) - hi) <= tol && std::abs(F(-X) - lo) <= tol) return X;
        X *= 2.0;
    }
    throw ConvergenceFailure("primitive does not settle to its limits", X, std::abs(F(X) - hi));
}

}  // namespace

namespace evolve {

double kernel_integral(const DistributionalData& data, double t, double x, int m, const SolveOptions& opts) {
    check_time(data, t);
    if (m < 0) throw InvalidArgument("kernel derivative order must be >= 0");
    const Primitive& F = data.primitive();
    const double growth = F.growth_tau();
    const double rate = 1.0 / (4.0 * t) - inverse_rate(growth);
    if (!(rate > 0.0)) throw OutOfHorizon("convolution integral diverges at t = " + std::to_string(t));
    const double center = std::isfinite(growth) ? x * growth / (growth - t) : x;
    const RealFn integrand = [&F, m, t, x](double xi) {
        const double k = kernel::theta_deriv(m, t, x - xi);
        return k == 0.0 ? 0.0 : F(xi) * k;
    };
    return realline::integrate_real_line(integrand, realline::DecayHint::gaussian(rate, center), opts.tol,
                                         F.breakpoints(), opts.max_intervals)
        .value;
}

double convolve(const DistributionalData& data, double t, double x, double tol) {
    return kernel_integral(data, t, x, data.order(), SolveOptions{tol});
}

double solution_derivative(const DistributionalData& data, double t, double x, int k, int j, double tol) {
    if (k < 0) throw InvalidArgument("space derivative order must be >= 0");
    if (j != 0 && j != 1) throw InvalidArgument("time derivative order must be 0 or 1");
    return kernel_integral(data, t, x, data.order() + k + 2 * j, SolveOptions{tol});
}

double solution_primitive(const DistributionalData& data, double t, double x, double tol) {
    require_bounded(data, "solution_primitive");
    return kernel_integral(data, t, x, 0, SolveOptions{tol});
}

NormReport field_norm(const DistributionalData& data, double t, int m, const SolveOptions& opts) {
    require_bounded(data, "field_norm");
    check_time(data, t);
    const double top = m == 0 ? *data.primitive().limit_pos() : 0.0;
    return spaces::primitive_norm([&](double x) { return kernel_integral(data, t, x, m, opts); }, 0.0, top,
                                  scan_options(data.primitive(), t));
}

double field_sup(const DistributionalData& data, double t, int m, const SolveOptions& opts) {
    require_bounded(data, "field_sup");
    check_time(data, t);
    const double top = m == 0 ? *data.primitive().limit_pos() : 0.0;
    const auto r = realline::sup_inf([&](double x) { return kernel_integral(data, t, x, m, opts); }, 0.0,
                                     top, scan_options(data.primitive(), t));
    return std::max(std::abs(r.sup), std::abs(r.inf));
}

NormReport convergence_norm(const DistributionalData& data, double t, const SolveOptions& opts) {
    require_bounded(data, "convergence_norm");
    check_time(data, t);
    const Primitive& F = data.primitive();
    return spaces::primitive_norm([&](double x) { return kernel_integral(data, t, x, 0, opts) - F(x); }, 0.0,
                                  0.0, scan_options(F, t));
}

NormReport weighted_convergence_norm(const DistributionalData& data, double sigma, double t,
                                     const SolveOptions& opts) {
    if (!data.weighted()) throw InvalidArgument("weighted_convergence_norm needs weighted data");
    const double tau = data.tau();
    if (!(sigma > 0.0 && sigma < tau)) throw InvalidArgument("weighted convergence needs 0 < sigma < tau");
    if (!(t > 0.0 && t < tau - sigma)) throw OutOfHorizon("weighted convergence needs 0 < t < tau - sigma");
    const Primitive& F = data.primitive();
    if (!F.density()) {
        throw UnsupportedDecay("weighted convergence needs a pointwise density; distribution-only data is unsupported");
    }
    const RealFn f = *F.density();
    const WeightSpec weight(sigma);
    const double rate = 1.0 / (4.0 * sigma) - inverse_rate(F.growth_tau() - t);
    if (!(rate > 0.0)) throw Divergence("(u_t - f) omega_sigma has no net decay");
    const int n = data.order();
    const RealFn h = [&data, &f, weight, t, n, opts](double xi) {
        const double w = weight(xi);
        return w == 0.0 ? 0.0 : (kernel_integral(data, t, xi, n, opts) - f(xi)) * w;
    };
    const Primitive G = primitives::accumulate(h, realline::DecayHint::gaussian(rate), opts.tol);
    return spaces::primitive_norm([&G](double x) { return G(x); }, 0.0, *G.limit_pos());
}

NormReport solution_weighted_norm(const DistributionalData& data, double sigma, double t,
                                  const SolveOptions& opts) {
    check_time(data, t);
    const WeightSpec weight(sigma);
    const double rate = 1.0 / (4.0 * sigma) - inverse_rate(data.primitive().growth_tau() - t);
    if (!(rate > 0.0)) throw Divergence("u_t omega_sigma has no net decay");
    const int n = data.order();
    const RealFn h = [&data, weight, t, n, opts](double xi) {
        const double w = weight(xi);
        return w == 0.0 ? 0.0 : kernel_integral(data, t, xi, n, opts) * w;
    };
    const Primitive G = primitives::accumulate(h, realline::DecayHint::gaussian(rate), opts.tol);
    return spaces::primitive_norm([&G](double x) { return G(x); }, 0.0, *G.limit_pos());
}

CheckPair sup_norm_estimate_check(const DistributionalData& data, double t, const SolveOptions& opts) {
    if (!std::holds_alternative<AlexSpace>(data.space())) throw InvalidArgument("sup-norm estimate needs alex data");
    CheckPair out;
    out.lhs = field_sup(data, t, data.order(), opts);
    out.rhs = spaces::alex_norm(data, opts.tol).value / (2.0 * std::sqrt(std::numbers::pi * t));
    return out;
}

CheckPair mass_check(const DistributionalData& data, double t, const SolveOptions& opts) {
    require_bounded(data, "mass_check");
    check_time(data, t);
    const Primitive& F = data.primitive();
    const double X = settle_radius(F, opts.tol) + realline::truncation_radius(1.0 / (4.0 * t), opts.tol);
    const int m = data.order() - 1;
    CheckPair out;
    out.lhs = kernel_integral(data, t, X, m, opts) - kernel_integral(data, t, -X, m, opts);
    out.rhs = data.order() == 1 ? *F.limit_pos() : 0.0;
    return out;
}

CheckPair weighted_pairing_check(const DistributionalData& data, double sigma, double t,
                                 const SolveOptions& opts) {
    if (!data.weighted()) throw InvalidArgument("pairing check needs weighted data");
    const double tau = data.tau();
    if (!(sigma > 0.0 && sigma < tau)) throw InvalidArgument("pairing check needs 0 < sigma < tau");
    if (!(t > 0.0 && t < tau - sigma)) throw OutOfHorizon("pairing check needs 0 < t < tau - sigma");
    const Primitive& F = data.primitive();
    if (!F.density()) throw UnsupportedDecay("pairing check needs a pointwise density");
    const RealFn f = *F.density();
    const double growth = F.growth_tau();
    const int n = data.order();

    const double rate_l = 1.0 / (4.0 * sigma) - inverse_rate(growth - t);
    const double rate_r = 1.0 / (4.0 * (sigma + t)) - inverse_rate(growth);
    if (!(rate_l > 0.0) || !(rate_r > 0.0)) throw Divergence("pairing integrals have no net decay");
    const RealFn left = [&data, t, sigma, n, opts](double x) {
        const double k = kernel::theta(sigma, x);
        return k == 0.0 ? 0.0 : kernel_integral(data, t, x, n, opts) * k;
    };
    const RealFn right = [&f, t, sigma](double x) {
        const double k = kernel::theta(sigma + t, x);
        return k == 0.0 ? 0.0 : f(x) * k;
    };
    CheckPair out;
    out.lhs = realline::integrate_real_line(left, realline::DecayHint::gaussian(rate_l), opts.tol).value;
    out.rhs = realline::integrate_real_line(right, realline::DecayHint::gaussian(rate_r), opts.tol,
                                            F.breakpoints())
                  .value;
    return out;
}

}  // namespace evolve

SolutionField::SolutionField(DistributionalData data, double t, SolveOptions opts)
    : data_(std::move(data)), t_(t), opts_(opts) {
    check_time(data_, t_);
}

double SolutionField::operator()(double x) const {
    return evolve::kernel_integral(data_, t_, x, data_.order(), opts_);
}

double SolutionField::derivative(double x, int k, int j) const {
    if (k < 0 || (j != 0 && j != 1)) throw InvalidArgument("derivative orders must be k >= 0, j in {0, 1}");
    return evolve::kernel_integral(data_, t_, x, data_.order() + k + 2 * j, opts_);
}

double SolutionField::primitive(double x) const {
    require_bounded(data_, "SolutionField::primitive");
    return evolve::kernel_integral(data_, t_, x, 0, opts_);
}

Primitive SolutionField::as_primitive() const {
    require_bounded(data_, "SolutionField::as_primitive");
    Primitive::Spec s;
    s.name = data_.primitive().name() + "*theta";
    const SolutionField self = *this;
    s.eval = [self](double x) { return self.primitive(x); };
    s.limit_neg = 0.0;
    s.limit_pos = data_.primitive().limit_pos();
    s.density = RealFn([self](double x) { return self(x); });
    s.breakpoints = data_.primitive().breakpoints();
    return Primitive(std::move(s));
}

}  // namespace heatdist
