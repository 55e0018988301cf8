#include "heatdist/uniqueness.hpp"

#include "heatdist/error.hpp"
#include "heatdist/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace heatdist::uniqueness {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational rational_pow(const Rational& x, int p) {
    Rational r = 1;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

}  // namespace

BigInt eulerian_exact(int n, int l) {
    if (n < 1) throw InvalidArgument("eulerian requires n >= 1");
    if (l < 0 || l > n) throw InvalidArgument("eulerian requires 0 <= l <= n");
    BigInt acc = 0;
    for (int k = 0; k <= l; ++k) {
        const BigInt term = binomial(n + 1, k) * boost::multiprecision::pow(BigInt(l + 1 - k), n);
        acc += (k % 2 == 0) ? term : BigInt(-term);
    }
    return acc;
}

std::int64_t eulerian(int n, int l) {
    if (n > kEulerianMax) {
        throw InvalidArgument("eulerian: n = " + std::to_string(n) + " exceeds the machine-integer cap " +
                              std::to_string(kEulerianMax) + " (use eulerian_exact)");
    }
    return eulerian_exact(n, l).convert_to<std::int64_t>();
}

EulerianTable::EulerianTable(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw InvalidArgument("EulerianTable requires n_max >= 1");
    rows_.resize(static_cast<std::size_t>(n_max) + 1);
    rows_[0] = {BigInt(1)};
    for (int n = 1; n <= n_max; ++n) {
        auto& row = rows_[static_cast<std::size_t>(n)];
        const auto& prev = rows_[static_cast<std::size_t>(n) - 1];
        row.assign(static_cast<std::size_t>(n) + 1, BigInt(0));
        for (int l = 0; l < n; ++l) {
            const BigInt stay = l < static_cast<int>(prev.size()) ? prev[static_cast<std::size_t>(l)] : BigInt(0);
            const BigInt step = l >= 1 ? prev[static_cast<std::size_t>(l) - 1] : BigInt(0);
            row[static_cast<std::size_t>(l)] = (l + 1) * stay + (n - l) * step;
        }
    }
}

const BigInt& EulerianTable::operator()(int n, int l) const {
    if (n < 0 || n > n_max_ || l < 0 || l > n) throw InvalidArgument("EulerianTable index out of range");
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)];
}

BigInt alternating_power_sum(int n, int m) {
    if (n < 0 || m < 0) throw InvalidArgument("alternating_power_sum needs n, m >= 0");
    BigInt acc = 0;
    for (int k = 0; k <= n; ++k) {
        const BigInt power = (k == 0 && m == 0) ? BigInt(1) : boost::multiprecision::pow(BigInt(k), m);
        const BigInt term = binomial(n, k) * power;
        acc += (k % 2 == 0) ? term : BigInt(-term);
    }
    return acc;
}

double g_step(int n, double x) {
    if (n < 1) throw InvalidArgument("g_step requires n >= 1");
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double scaled = x * (n + 1);
    const double k = std::floor(scaled);
    if (k == scaled) return 0.0;
    const int ki = static_cast<int>(k);
    return (ki % 2 == 0 ? 1.0 : -1.0) * binomial(n, ki).convert_to<double>();
}

WeightG::WeightG(int n) : n_(n) {
    if (n < 1 || n > kWeightMax) {
        throw InvalidArgument("weight_G supports 1 <= n <= " + std::to_string(kWeightMax));
    }
    const Rational inv_fact = Rational(1) / Rational(factorial(n));
    std::vector<BigInt> binom_n(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) binom_n[static_cast<std::size_t>(p)] = binomial(n, p);

    // Adds sign * (x - c)^n expanded in powers of y = x - a_j, where a_j - c = shift.
    auto add_power = [&](std::vector<Rational>& coeffs, const Rational& shift, const Rational& weight) {
        for (int p = 0; p <= n; ++p) {
            coeffs[static_cast<std::size_t>(p)] +=
                weight * Rational(binom_n[static_cast<std::size_t>(p)]) * rational_pow(shift, n - p);
        }
    };
    for (int j = 0; j <= n; ++j) {
        std::vector<Rational> coeffs(static_cast<std::size_t>(n) + 1, Rational(0));
        const Rational aj = knot(j);
        for (int k = 0; k <= j; ++k) {
            const Rational w = (k % 2 == 0 ? Rational(1) : Rational(-1)) * Rational(binomial(n, k)) * inv_fact;
            add_power(coeffs, aj - knot(k), w);
            if (k < j) add_power(coeffs, aj - knot(k + 1), -w);
        }
        std::vector<double> approx;
        for (const auto& c : coeffs) approx.push_back(c.convert_to<double>());
        pieces_.push_back(std::move(coeffs));
        pieces_double_.push_back(std::move(approx));
    }
}

Rational WeightG::knot(int k) const { return Rational(k, n_ + 1); }

double WeightG::operator()(double x) const {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const int j = std::min(n_, static_cast<int>(std::floor(x * (n_ + 1))));
    const double y = x - static_cast<double>(j) / (n_ + 1);
    const auto& c = pieces_double_[static_cast<std::size_t>(j)];
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

Rational WeightG::exact(const Rational& x) const {
    if (x <= 0 || x >= 1) return Rational(0);
    const Rational scaled = x * (n_ + 1);
    BigInt j = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    const int ji = std::min(n_, j.convert_to<int>());
    const Rational y = x - knot(ji);
    const auto& c = pieces_[static_cast<std::size_t>(ji)];
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

WeightG weight_G(int n) { return WeightG(n); }

double psi_probe(const FieldFn& u, int n, double y, double x, double t, double tol) {
    if (n < 1) throw InvalidArgument("psi_probe requires n >= 1");
    if (!(y > 0.0)) throw InvalidArgument("psi_probe requires y > 0");
    if (!(t > 0.0)) throw InvalidArgument("psi_probe requires t > 0");
    RealFn integrand;
    std::vector<double> cuts;
    if (n == 1) {
        integrand = [&u, t](double xi) { return u(xi, t); };
    } else {
        auto G = std::make_shared<WeightG>(n - 1);
        integrand = [&u, G, x, y, t](double xi) {
            const double w = (*G)((xi - x + y) / (2.0 * y));
            return w == 0.0 ? 0.0 : w * u(xi, t);
        };
        for (int k = 1; k < n; ++k) cuts.push_back(x - y + 2.0 * y * k / n);
    }
    const auto q = realline::integrate_interval(integrand, x - y, x + y, tol, cuts);
    return q.value / (2.0 * y);
}

std::pair<double, double> fit_loglog(const std::vector<double>& t, const std::vector<double>& norm) {
    if (t.size() != norm.size() || t.size() < 3) throw InvalidArgument("fit_loglog needs >= 3 paired points");
    std::vector<std::size_t> order(t.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    const std::size_t used = std::max<std::size_t>(3, (t.size() + 1) / 2);
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < used; ++i) {
        const double v = norm[order[i]];
        if (!(v > 0.0)) return {0.0, 0.0};
        lx.push_back(std::log(t[order[i]]));
        ly.push_back(std::log(v));
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("fit_loglog needs distinct times");
    const double slope = sxy / sxx;
    // a flat trajectory is explained perfectly by slope 0
    const double r2 = syy <= 1e-24 * n ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, r2};
}

ProbeReport uniqueness_probe(const Trajectory& u, const ProbeSpace& space, std::vector<double> t_grid,
                             double tol, const ProbeOptions& opts) {
    if (!u.value) throw InvalidArgument("uniqueness_probe needs a field evaluator");
    if (t_grid.size() < 3) throw InvalidArgument("uniqueness_probe needs at least three times");
    std::sort(t_grid.begin(), t_grid.end());
    if (!(t_grid.front() > 0.0)) throw InvalidArgument("probe times must be positive");

    ProbeReport rep;
    rep.t = t_grid;
    int psi_order = 1;
    std::function<double(double)> norm_at;

    if (std::holds_alternative<AlexProbe>(space) || std::holds_alternative<AlexNProbe>(space)) {
        if (!u.primitive) throw InvalidArgument("alex probes need a primitive evaluator per t");
        if (const auto* an = std::get_if<AlexNProbe>(&space)) {
            if (an->n < 2) throw InvalidArgument("alexn probe needs n >= 2");
            psi_order = an->n;
            rep.space = "alexn";
            rep.params["n"] = an->n;
            rep.hypothesis = "||u_t||^(n) bounded as t -> 0+";
        } else {
            rep.space = "alex";
            rep.hypothesis = "||u_t|| bounded as t -> 0+";
        }
        norm_at = [&u](double t) {
            const Primitive P = u.primitive(t);
            if (!P.in_bc()) throw InvalidArgument("trajectory primitive is not in B_c");
            return spaces::primitive_norm([&P](double x) { return P(x); }, 0.0, *P.limit_pos(),
                                          spaces::scan_options_for(P))
                .value;
        };
    } else {
        const auto w = std::get<WeightedProbe>(space);
        if (!(w.sigma > 0.0 && w.sigma < w.tau) || !(w.rho > 0.0 && w.rho < w.tau)) {
            throw InvalidArgument("weighted probe needs 0 < sigma, rho < tau");
        }
        rep.space = "weighted";
        rep.params = {{"tau", w.tau}, {"sigma", w.sigma}, {"rho", w.rho},
                      {"rho_below_sigma", w.rho < w.sigma ? 1.0 : 0.0}};
        rep.hypothesis = "||u_t||_sigma sqrt(tau - sigma - t) bounded as t -> 0+";
        if (!(t_grid.back() < w.tau - w.sigma)) throw OutOfHorizon("weighted probe needs t < tau - sigma");
        norm_at = [&u, w, tol](double t) {
            const WeightSpec weight(w.sigma);
            const double rate = 1.0 / (4.0 * w.sigma) - 1.0 / (4.0 * (w.tau - t));
            const RealFn h = [&u, weight, t](double x) {
                const double om = weight(x);
                return om == 0.0 ? 0.0 : u.value(x, t) * om;
            };
            const Primitive G = primitives::accumulate(h, realline::DecayHint::gaussian(rate), tol);
            const double n = spaces::primitive_norm([&G](double x) { return G(x); }, 0.0, *G.limit_pos()).value;
            return n * std::sqrt(w.tau - w.sigma - t);
        };
    }

    for (double t : t_grid) rep.norm.push_back(norm_at(t));
    const auto [slope, r2] = fit_loglog(rep.t, rep.norm);
    rep.slope = slope;
    rep.r_squared = r2;
    const bool diverging = slope < -0.1 && r2 > 0.9;
    rep.classification = diverging ? "diverging" : "bounded";
    rep.rate_exponent = diverging ? slope : 0.0;
    rep.hypothesis_holds = !diverging;

    rep.psi_x = opts.psi_x;
    rep.psi_t = t_grid.front();
    for (double y : opts.psi_y) {
        rep.psi.push_back({y, psi_probe(u.value, psi_order, y, opts.psi_x, rep.psi_t, tol)});
    }
    return rep;
}

}  // namespace heatdist::uniqueness
