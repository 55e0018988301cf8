#include "heatdist/spaces.hpp"

#include "heatdist/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace heatdist {

WeightSpec::WeightSpec(double tau_) : tau(tau_) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("weight requires finite tau > 0");
}

double WeightSpec::operator()(double x) const { return std::exp(-x * x / (4.0 * tau)); }

namespace spaces {

namespace {


NormReport to_norm(const realline::ExtremumReport& r) {
    NormReport out;
    out.value = std::max(0.0, r.sup - r.inf);
    out.achieved_by = std::minmax(r.arg_inf, r.arg_sup);
    out.refinement_error = r.refinement_error;
    return out;
}

void require_bc(const DistributionalData& data, const char* who) {
    if (!data.primitive().in_bc()) throw InvalidArgument(std::string(who) + ": primitive is not in B_c");
}

}  // namespace

realline::ExtremumOptions scan_options_for(const Primitive& F) {
    realline::ExtremumOptions opts;
    opts.extra_points = F.breakpoints();
    if (F.support()) {
        opts.extra_points.push_back(F.support()->first);
        opts.extra_points.push_back(F.support()->second);
    }
    return opts;
}

NormReport primitive_norm(const RealFn& F, double limit_neg, double limit_pos,
                          const realline::ExtremumOptions& opts) {
    return to_norm(realline::sup_inf(F, limit_neg, limit_pos, opts));
}

NormReport alex_norm(const DistributionalData& data, double /*tol*/) {
    if (!std::holds_alternative<AlexSpace>(data.space())) throw InvalidArgument("alex_norm needs alex data");
    require_bc(data, "alex_norm");
    const Primitive& F = data.primitive();
    return primitive_norm([&F](double x) { return F(x); }, 0.0, *F.limit_pos(), scan_options_for(F));
}

NormReport alexn_norm(const DistributionalData& data, double /*tol*/) {
    if (!std::holds_alternative<AlexNSpace>(data.space())) throw InvalidArgument("alexn_norm needs alexn data");
    require_bc(data, "alexn_norm");
    const Primitive& F = data.primitive();
    return primitive_norm([&F](double x) { return F(x); }, 0.0, *F.limit_pos(), scan_options_for(F));
}

Primitive weighted_primitive_fn(const DistributionalData& data, const WeightSpec& weight, double tol) {
    const Primitive F = data.primitive();
    const double growth = F.growth_tau();
    if (!(growth > weight.tau)) {
        throw Divergence("weighted primitive diverges: growth exponent tau' = " + std::to_string(growth) +
                         " does not exceed the weight tau = " + std::to_string(weight.tau));
    }
    const double rate = 1.0 / (4.0 * weight.tau) - (std::isfinite(growth) ? 1.0 / (4.0 * growth) : 0.0);
    const double sigma = weight.tau;
    // G = F omega - int F omega'  with  -omega'(x) = x omega(x) / (2 sigma)
    RealFn by_parts = [F, weight, sigma](double xi) {
        const double w = weight(xi);
        return w == 0.0 ? 0.0 : F(xi) * xi * w / (2.0 * sigma);
    };
    const auto hint = realline::DecayHint::gaussian(rate);
    const Primitive tail = primitives::accumulate(by_parts, hint, tol);
    const auto [lo, hi] = realline::effective_window(by_parts, hint, tol);
    const double total = *tail.limit_pos();

    Primitive::Spec s;
    s.name = F.name() + "*omega";
    s.eval = [F, weight, tail, lo = lo, hi = hi, total](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return total;
        return F(x) * weight(x) + tail(x);
    };
    s.limit_neg = 0.0;
    s.limit_pos = total;
    s.breakpoints = F.breakpoints();
    return Primitive(std::move(s));
}

double weighted_primitive(const DistributionalData& data, const WeightSpec& weight, double x, double tol) {
    const Primitive F = data.primitive();
    const double growth = F.growth_tau();
    if (!(growth > weight.tau)) throw Divergence("weighted primitive diverges for this weight");
    const double rate = 1.0 / (4.0 * weight.tau) - (std::isfinite(growth) ? 1.0 / (4.0 * growth) : 0.0);
    const double sigma = weight.tau;
    RealFn by_parts = [&F, &weight, sigma](double xi) {
        const double w = weight(xi);
        return w == 0.0 ? 0.0 : F(xi) * xi * w / (2.0 * sigma);
    };
    const auto [lo, hi] = realline::effective_window(by_parts, realline::DecayHint::gaussian(rate), tol);
    if (x <= lo) return 0.0;
    const double upper = std::min(x, hi);
    const double boundary = x >= hi ? 0.0 : F(x) * weight(x);
    return boundary + realline::integrate_interval(by_parts, lo, upper, tol, F.breakpoints()).value;
}

double weighted_primitive(const DistributionalData& data, double x, double tol) {
    return weighted_primitive(data, WeightSpec(data.tau()), x, tol);
}

NormReport weighted_norm(const DistributionalData& data, const WeightSpec& weight, double tol) {
    const Primitive G = weighted_primitive_fn(data, weight, tol);
    return primitive_norm([&G](double x) { return G(x); }, 0.0, *G.limit_pos(),
                          scan_options_for(data.primitive()));
}

NormReport weighted_norm(const DistributionalData& data, double tol) {
    return weighted_norm(data, WeightSpec(data.tau()), tol);
}

double holder_bound(const DistributionalData& data, double g_limit_pos, double g_variation, double tol) {
    if (!(g_variation >= 0.0) || !std::isfinite(g_variation)) {
        throw InvalidArgument("holder_bound needs a finite variation");
    }
    const double norm = std::holds_alternative<AlexNSpace>(data.space()) ? alexn_norm(data, tol).value
                                                                        : alex_norm(data, tol).value;
    return norm * (std::abs(g_limit_pos) + g_variation);
}

}  // namespace spaces
}  // namespace heatdist
