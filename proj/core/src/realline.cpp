#include "heatdist/realline.hpp"

#include "heatdist/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

namespace heatdist::realline {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600861672543, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

double checked(const RealFn& g, double x) {
    const double v = g(x);
    if (!std::isfinite(v)) {
        throw EvaluationFailure("non-finite integrand value at x = " + std::to_string(x), x);
    }
    return v;
}

// One GK21 panel, error estimate as in QUADPACK's qk21.
Panel gk21(const RealFn& g, double a, double b, double& peak) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(g, center);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double lo = checked(g, center - dx);
        const double hi = checked(g, center + dx);
        f1[j] = lo;
        f2[j] = hi;
        kronrod += kKronrodWeights[j] * (lo + hi);
        abs_sum += kKronrodWeights[j] * (std::abs(lo) + std::abs(hi));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo + hi);
        peak = std::max({peak, std::abs(lo), std::abs(hi)});
    }
    peak = std::max(peak, std::abs(fc));
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    const double result = kronrod * half;
    const double resabs = abs_sum * std::abs(half);
    const double resasc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    return Panel{a, b, result, err};
}

struct Adaptive {
    QuadratureResult result;
    double peak = 0.0;
};

Adaptive adaptive(const RealFn& g, double a, double b, double tol, std::span<const double> breakpoints,
                  std::size_t max_intervals, std::size_t seed_panels) {
    if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
    if (!(a <= b)) throw InvalidArgument("integrate_interval requires a <= b");
    Adaptive out;
    if (a == b) {
        checked(g, a);
        out.result = QuadratureResult{0.0, 0.0, 1};
        return out;
    }
    std::vector<double> cuts{a};
    for (std::size_t i = 1; i < seed_panels; ++i) {
        cuts.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(seed_panels));
    }
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    std::vector<Panel> settled;  // panels too narrow to split further
    double total = 0.0;
    double total_err = 0.0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = gk21(g, cuts[i], cuts[i + 1], out.peak);
        evals += 21;
        total += p.value;
        total_err += p.error;
        queue.push(p);
    }
    const double abs_floor = tol * (1.0 + std::abs(b - a));
    auto resum = [&] {
        total = 0.0;
        total_err = 0.0;
        auto copy = queue;
        while (!copy.empty()) {
            total += copy.top().value;
            total_err += copy.top().error;
            copy.pop();
        }
        for (const Panel& p : settled) {
            total += p.value;
            total_err += p.error;
        }
    };
    std::size_t intervals = queue.size();
    while (true) {
        if (total_err <= std::max(tol * std::abs(total), abs_floor)) {
            resum();
            if (total_err <= std::max(tol * std::abs(total), abs_floor)) break;
        }
        if (queue.empty()) break;
        if (intervals >= max_intervals) {
            resum();
            throw ConvergenceFailure("adaptive quadrature reached its interval limit", total,
                                     total_err);
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 1e3 * kEps * std::max(1.0, std::abs(mid))) {
            settled.push_back(worst);
            continue;
        }
        Panel left = gk21(g, worst.a, mid, out.peak);
        Panel right = gk21(g, mid, worst.b, out.peak);
        evals += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    resum();
    out.result = QuadratureResult{total, total_err, evals};
    return out;
}

}  // namespace

DecayHint DecayHint::gaussian(double rate, double center) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidArgument("gaussian decay rate must be positive and finite");
    }
    return DecayHint{GaussianDecay{rate, center}};
}

DecayHint DecayHint::compact(double a, double b) {
    if (!(a < b)) throw InvalidArgument("compact decay hint requires a < b");
    return DecayHint{CompactDecay{a, b}};
}

std::pair<double, double> DecayHint::window(double tol) const {
    if (const auto* g = std::get_if<GaussianDecay>(&kind_)) {
        const double r = truncation_radius(g->rate, tol);
        return {g->center - r, g->center + r};
    }
    if (const auto* c = std::get_if<CompactDecay>(&kind_)) return {c->a, c->b};
    throw UnsupportedDecay("no decay information: refusing to truncate an infinite integral");
}

double truncation_radius(double rate, double tol) {
    if (!(tol > 0.0) || tol >= 1.0) throw InvalidArgument("truncation tolerance must lie in (0, 1)");
    return std::sqrt(std::log(1.0 / (tol * 1e-2)) / rate);
}

std::pair<double, double> effective_window(const RealFn& g, const DecayHint& hint, double tol) {
    auto [lo, hi] = hint.window(tol);
    const auto* gd = std::get_if<GaussianDecay>(&hint.kind());
    if (gd == nullptr) return {lo, hi};
    constexpr int kSamples = 64;
    double peak = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double v = g(lo + (hi - lo) * i / kSamples);
        if (std::isfinite(v)) peak = std::max(peak, std::abs(v));
    }
    double radius = hi - gd->center;
    const double target = tol * 1e-2 * peak;
    for (int grow = 0; grow < 40; ++grow) {
        const double left = std::abs(g(gd->center - radius * 1.1));
        const double right = std::abs(g(gd->center + radius * 1.1));
        if (!std::isfinite(left) || !std::isfinite(right)) break;
        if (std::abs(g(gd->center - radius)) <= target && std::abs(g(gd->center + radius)) <= target) break;
        radius *= 1.1;
    }
    return {gd->center - radius, gd->center + radius};
}

QuadratureResult integrate_interval(const RealFn& g, double a, double b, double tol,
                                    std::span<const double> breakpoints, std::size_t max_intervals) {
    return adaptive(g, a, b, tol, breakpoints, max_intervals, 1).result;
}

QuadratureResult integrate_real_line(const RealFn& g, const DecayHint& hint, double tol,
                                     std::span<const double> breakpoints, std::size_t max_intervals) {
    const auto [lo, hi] = effective_window(g, hint, tol);
    const bool gaussian = std::holds_alternative<GaussianDecay>(hint.kind());
    Adaptive run = adaptive(g, lo, hi, tol, breakpoints, max_intervals, gaussian ? 4 : 1);
    if (gaussian) {
        const auto& gd = std::get<GaussianDecay>(hint.kind());
        const double r = hi - gd.center;
        const double tail = run.peak * std::sqrt(std::numbers::pi / gd.rate) *
                            std::erfc(r * std::sqrt(gd.rate));
        run.result.error_estimate += tail;
    }
    return run.result;
}

double total_variation(const RealFn& g, const std::optional<RealFn>& g_deriv, const DecayHint& hint,
                       double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("total_variation tolerance must be positive");
    if (g_deriv) {
        const RealFn& d = *g_deriv;
        return integrate_real_line([&d](double x) { return std::abs(d(x)); }, hint, tol).value;
    }
    const auto [lo, hi] = hint.window(std::min(tol, 1e-3));
    constexpr std::size_t kStart = 64;
    constexpr std::size_t kCeiling = std::size_t{1} << 20;
    std::vector<double> values(kStart + 1);
    for (std::size_t i = 0; i <= kStart; ++i) {
        values[i] = checked(g, lo + (hi - lo) * static_cast<double>(i) / kStart);
    }
    auto sum_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) s += std::abs(v[i + 1] - v[i]);
        return s;
    };
    double previous = sum_of(values);
    for (std::size_t n = kStart * 2; n <= kCeiling; n *= 2) {
        std::vector<double> next(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            next[i] = (i % 2 == 0) ? values[i / 2]
                                   : checked(g, lo + (hi - lo) * static_cast<double>(i) /
                                                         static_cast<double>(n));
        }
        const double current = sum_of(next);
        if (std::abs(current - previous) < tol) return current;
        if (n == kCeiling) {
            throw UnboundedVariation("variation estimates did not settle by 2^20 panels", previous,
                                     current);
        }
        previous = current;
        values = std::move(next);
    }
    throw UnboundedVariation("variation estimates did not settle", previous, previous);
}

namespace {

// Golden-section search for a maximum of sign * F on [lo, hi]; returns the best
// abscissa seen and updates spread with the value range over the last bracket.
std::pair<double, double> golden(const RealFn& F, double sign, double lo, double hi, double x0,
                                 double f0, double tol, double& spread) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double best_x = x0;
    double best_f = f0;
    auto eval = [&](double x) {
        const double v = sign * checked(F, x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
        return v;
    };
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = eval(c);
    double fd = eval(d);
    for (int it = 0; it < 200; ++it) {
        if (hi - lo < tol * std::max(1.0, std::abs(0.5 * (lo + hi)))) break;
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = eval(d);
        }
    }
    spread = std::max(spread, std::abs(fc - fd));
    return {best_x, best_f};
}

}  // namespace

ExtremumReport sup_inf(const RealFn& F, double limit_neg, double limit_pos, const ExtremumOptions& opts) {
    if (!std::isfinite(limit_neg) || !std::isfinite(limit_pos)) {
        throw InvalidArgument("sup_inf requires finite limits at +-infinity");
    }
    if (opts.grid < 3) throw InvalidArgument("sup_inf grid needs at least 3 points");
    std::vector<double> xs;
    xs.reserve(opts.grid + opts.extra_points.size());
    const double n = static_cast<double>(opts.grid);
    for (std::size_t i = 1; i < opts.grid; ++i) {
        const double u = -0.5 * std::numbers::pi + std::numbers::pi * static_cast<double>(i) / n;
        xs.push_back(std::tan(u));
    }
    for (double x : opts.extra_points) {
        if (std::isfinite(x)) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> px;
    std::vector<double> pv;
    px.reserve(xs.size() + 2);
    pv.reserve(xs.size() + 2);
    px.push_back(-inf);
    pv.push_back(limit_neg);
    for (double x : xs) {
        px.push_back(x);
        pv.push_back(checked(F, x));
    }
    px.push_back(inf);
    pv.push_back(limit_pos);

    ExtremumReport rep;
    rep.refinement_error = 0.0;
    for (double sign : {1.0, -1.0}) {
        // best over grid and limits
        std::size_t best = 0;
        for (std::size_t i = 1; i < pv.size(); ++i) {
            if (sign * pv[i] > sign * pv[best]) best = i;
        }
        double best_x = px[best];
        double best_v = sign * pv[best];

        std::vector<std::size_t> cands;
        for (std::size_t i = 1; i + 1 < pv.size(); ++i) {
            if (sign * pv[i] >= sign * pv[i - 1] && sign * pv[i] >= sign * pv[i + 1]) cands.push_back(i);
        }
        std::sort(cands.begin(), cands.end(),
                  [&](std::size_t a, std::size_t b) { return sign * pv[a] > sign * pv[b]; });
        if (cands.size() > opts.candidates) cands.resize(opts.candidates);
        double spread = 0.0;
        for (std::size_t i : cands) {
            const double x = px[i];
            const double lo = std::isfinite(px[i - 1]) ? px[i - 1] : x - std::max(1.0, std::abs(x));
            const double hi = std::isfinite(px[i + 1]) ? px[i + 1] : x + std::max(1.0, std::abs(x));
            double local_spread = 0.0;
            auto [xr, vr] = golden(F, sign, lo, hi, x, sign * pv[i], opts.tol, local_spread);
            if (vr > best_v) {
                best_v = vr;
                best_x = xr;
                spread = local_spread;
            }
        }
        if (sign > 0) {
            rep.sup = best_v;
            rep.arg_sup = best_x;
        } else {
            rep.inf = -best_v;
            rep.arg_inf = best_x;
        }
        rep.refinement_error = std::max(rep.refinement_error, spread);
    }
    return rep;
}

double erfc_tail(double x) {
    if (std::isnan(x)) return x;
    if (std::abs(x) <= 25.0) return std::erfc(x);
    const double ax = std::abs(x);
    const double z = 1.0 / (2.0 * ax * ax);
    // erfc(x) ~ exp(-x^2) / (sqrt(pi) x) * (1 - z + 3 z^2 - 15 z^3 + 105 z^4)
    const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
    const double tail = std::exp(-ax * ax) / (std::sqrt(std::numbers::pi) * ax) * series;
    return x > 0.0 ? tail : 2.0 - tail;
}

namespace {

// Returns (C(x), S(x)) for x >= 0.
std::pair<double, double> fresnel_pair(double x) {
    constexpr double kPiBy2 = 0.5 * std::numbers::pi;
    constexpr double kSeriesLimit = 1.5;
    constexpr int kMaxIt = 300;
    constexpr double kTol = 1e-16;
    constexpr double kTiny = 1e-300;
    if (x < 1e-150) return {x, 0.0};
    if (x <= kSeriesLimit) {
        double sum = 0.0;
        double sums = 0.0;
        double sumc = x;
        double sign = 1.0;
        const double fact = kPiBy2 * x * x;
        bool odd = true;
        double term = x;
        double n = 3.0;
        for (int k = 1; k <= kMaxIt; ++k) {
            term *= fact / k;
            sum += sign * term / n;
            const double test = std::abs(sum) * kTol;
            if (odd) {
                sign = -sign;
                sums = sum;
                sum = sumc;
            } else {
                sumc = sum;
                sum = sums;
            }
            if (term < test) break;
            odd = !odd;
            n += 2.0;
        }
        return {sumc, sums};
    }
    // Modified Lentz evaluation of the continued fraction for erfc.
    using cd = std::complex<double>;
    const double pix2 = std::numbers::pi * x * x;
    cd b(1.0, -pix2);
    cd cc = 1.0 / kTiny;
    cd d = 1.0 / b;
    cd h = d;
    double n = -1.0;
    for (int k = 2; k <= kMaxIt; ++k) {
        n += 2.0;
        const double a = -n * (n + 1.0);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cd del = cc * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kTol) break;
    }
    h *= cd(x, -x);
    const cd cs = cd(0.5, 0.5) * (1.0 - cd(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
    return {cs.real(), cs.imag()};
}

}  // namespace

double fresnel_c(double z) {
    const auto [c, s] = fresnel_pair(std::abs(z));
    (void)s;
    return z < 0 ? -c : c;
}

double fresnel_s(double z) {
    const auto [c, s] = fresnel_pair(std::abs(z));
    (void)c;
    return z < 0 ? -s : s;
}

double exp_square_integral(double z) {
    const double z2 = z * z;
    double term = z;  // z^{2k+1} / k!
    double sum = z;
    for (int k = 1; k < 100000; ++k) {
        term *= z2 / k;
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (k > z2 && std::abs(add) <= 1e-17 * std::abs(sum)) break;
        if (!std::isfinite(sum)) break;
    }
    return sum;
}

}  // namespace heatdist::realline
