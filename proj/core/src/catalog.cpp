#include "heatdist/catalog.hpp"

#include "heatdist/error.hpp"
#include "heatdist/kernel.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>

namespace heatdist::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int as_int(const ParamMap& p, const std::string& key) {
    const double v = p.at(key);
    if (std::floor(v) != v) throw InvalidArgument("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

Space order_space(int n) { return n == 1 ? Space{AlexSpace{}} : Space{AlexNSpace{}}; }

double always(const ParamMap&) { return kInf; }
std::optional<double> unknown_norm(const ParamMap&) { return std::nullopt; }

std::map<std::string, CatalogEntry> build_registry() {
    std::map<std::string, CatalogEntry> reg;
    auto add = [&reg](CatalogEntry e) {
        if (!e.horizon) e.horizon = always;
        if (!e.oracle_norm) e.oracle_norm = unknown_norm;
        reg.emplace(e.key, std::move(e));
    };

    add({"gauss", "f = Theta_s, u = Theta_{s+t}", {{"s", 0.1}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("gauss-cdf", {{"s", p.at("s")}}),
                                       AlexSpace{});
         },
         [](const ParamMap& p, double x, double t) { return kernel::theta(p.at("s") + t, x); }, nullptr,
         [](const ParamMap&) -> std::optional<double> { return 1.0; }});

    add({"gauss-prime", "f = Theta_s', u = Theta_{s+t}'", {{"s", 0.25}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("gauss", {{"s", p.at("s")}}),
                                       AlexSpace{});
         },
         [](const ParamMap& p, double x, double t) { return kernel::theta_deriv(1, p.at("s") + t, x); },
         nullptr,
         [](const ParamMap& p) -> std::optional<double> {
             return 1.0 / (2.0 * std::sqrt(std::numbers::pi * p.at("s")));
         }});

    add({"neg-gauss", "f = Theta_{-s} in the weighted space tau < s, u = Theta_{t-s}",
         {{"s", 2.0}, {"tau", 1.5}},
         [](const ParamMap& p) {
             if (!(p.at("s") > p.at("tau"))) throw InvalidArgument("neg-gauss requires s > tau");
             return DistributionalData(1, primitives::make_closed_form("neg-gauss", {{"s", p.at("s")}}),
                                       WeightedSpace{p.at("tau")});
         },
         [](const ParamMap& p, double x, double t) { return kernel::theta_signed(t - p.at("s"), x); },
         [](const ParamMap& p) { return p.at("tau"); },
         [](const ParamMap& p) -> std::optional<double> {
             const double s = p.at("s");
             const double tau = p.at("tau");
             return std::sqrt(tau / (s - tau));
         }});

    add({"sin", "f = sin(s x), u = sin(s x) exp(-s^2 t)", {{"s", 1.0}, {"tau", 8.0}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("sin", {{"s", p.at("s")}}),
                                       WeightedSpace{p.at("tau")});
         },
         [](const ParamMap& p, double x, double t) {
             const double s = p.at("s");
             return std::sin(s * x) * std::exp(-s * s * t);
         },
         [](const ParamMap& p) { return p.at("tau"); }, nullptr});

    add({"chirp", "f = cos or sin of x^2/(4s) (imag = 0 or 1)", {{"s", 1.0}, {"imag", 0.0}},
         [](const ParamMap& p) {
             const int imag = as_int(p, "imag");
             if (imag != 0 && imag != 1) throw InvalidArgument("chirp: imag must be 0 or 1");
             return DistributionalData(
                 1, primitives::make_closed_form(imag ? "fresnel-sin" : "fresnel-cos", {{"s", p.at("s")}}),
                 AlexSpace{});
         },
         [](const ParamMap& p, double x, double t) {
             // exp(i x^2 / (4s)) * Theta_t = sqrt(s / (s - i t)) exp(i x^2 / (4 (s - i t)))
             const double s = p.at("s");
             const std::complex<double> d(s, -t);
             const std::complex<double> u = std::sqrt(s / d) * std::exp(std::complex<double>(0.0, 1.0) * x * x / (4.0 * d));
             return as_int(p, "imag") ? u.imag() : u.real();
         },
         nullptr, nullptr});

    add({"poly", "f = x^n, u = heat polynomial", {{"n", 3.0}, {"tau", 8.0}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("poly", {{"n", p.at("n")}}),
                                       WeightedSpace{p.at("tau")});
         },
         [](const ParamMap& p, double x, double t) { return heat_polynomial(as_int(p, "n"), x, t); },
         [](const ParamMap& p) { return p.at("tau"); }, nullptr});

    add({"hermite", "f = H_n, u = (1-4t)^{n/2} H_n(x / sqrt(1-4t)) for t < 1/4", {{"n", 2.0}, {"tau", 8.0}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("hermite", {{"n", p.at("n")}}),
                                       WeightedSpace{p.at("tau")});
         },
         [](const ParamMap& p, double x, double t) {
             const int n = as_int(p, "n");
             const double r = 1.0 - 4.0 * t;
             return std::pow(r, 0.5 * n) * kernel::hermite(n, x / std::sqrt(r));
         },
         [](const ParamMap& p) { return std::min(0.25, p.at("tau")); }, nullptr});

    add({"cantor-deriv", "f = V', derivative of the Cantor function", {{"depth", 64.0}},
         [](const ParamMap& p) {
             return DistributionalData(1, primitives::make_closed_form("cantor", {{"depth", p.at("depth")}}),
                                       AlexSpace{});
         },
         nullptr, nullptr, [](const ParamMap&) -> std::optional<double> { return 1.0; }});

    add({"weierstrass-deriv", "f = F^{(n)}, F = w(x) exp(-|x|) with a Weierstrass partial sum w",
         {{"n", 1.0}, {"a", 0.5}, {"b", 3.0}, {"terms", 6.0}},
         [](const ParamMap& p) {
             const int n = as_int(p, "n");
             return DistributionalData(
                 n,
                 primitives::make_closed_form("weierstrass-damped",
                                              {{"a", p.at("a")}, {"b", p.at("b")}, {"terms", p.at("terms")}}),
                 order_space(n));
         },
         nullptr, nullptr, nullptr});

    add({"dirac-diff", "f = F_2^{(n)} = delta^{(n-2)} - delta_1^{(n-2)}", {{"n", 2.0}},
         [](const ParamMap& p) {
             const int n = as_int(p, "n");
             if (n < 2) throw InvalidArgument("dirac-diff requires n >= 2");
             return DistributionalData(n, primitives::make_closed_form("step-ramp"), AlexNSpace{});
         },
         [](const ParamMap& p, double x, double t) {
             const int m = as_int(p, "n") - 2;
             return kernel::theta_deriv(m, t, x) - kernel::theta_deriv(m, t, x - 1.0);
         },
         nullptr, [](const ParamMap&) -> std::optional<double> { return 1.0; }});

    add({"alg-sing", "f = F_3^{(n)}, F_3 = H(x) x^alpha exp(-x)", {{"alpha", 0.5}, {"n", 1.0}},
         [](const ParamMap& p) {
             const int n = as_int(p, "n");
             return DistributionalData(n, primitives::make_closed_form("alg-sing", {{"alpha", p.at("alpha")}}),
                                       order_space(n));
         },
         nullptr, nullptr,
         [](const ParamMap& p) -> std::optional<double> {
             const double a = p.at("alpha");
             return std::pow(a, a) * std::exp(-a);
         }});

    add({"non-lp", "truncated sum_{n <= N} (-1)^n Theta_s(x - b_n) / log(n + 1)",
         {{"s", 0.1}, {"N", 8.0}, {"t0", 0.1}},
         [](const ParamMap& p) {
             return DistributionalData(
                 1, primitives::make_closed_form("non-lp", {{"s", p.at("s")}, {"N", p.at("N")}, {"t0", p.at("t0")}}),
                 AlexSpace{});
         },
         [](const ParamMap& p, double x, double t) {
             const double s = p.at("s");
             const double shift = 2.0 * std::sqrt(s + p.at("t0"));
             double acc = 0.0;
             for (int n = 1; n <= as_int(p, "N"); ++n) {
                 const double a = (n % 2 == 0 ? 1.0 : -1.0) / std::log(n + 1.0);
                 acc += a * kernel::theta(s + t, x - shift * n * n);
             }
             return acc;
         },
         nullptr, nullptr});

    add({"step", "f = characteristic function of (a, b)", {{"a", 0.0}, {"b", 1.0}},
         [](const ParamMap& p) {
             return DistributionalData(
                 1, primitives::make_closed_form("ramp", {{"a", p.at("a")}, {"b", p.at("b")}}), AlexSpace{});
         },
         [](const ParamMap& p, double x, double t) {
             const double r = 2.0 * std::sqrt(t);
             return 0.5 * (realline::erfc_tail((p.at("a") - x) / r) - realline::erfc_tail((p.at("b") - x) / r));
         },
         nullptr, [](const ParamMap& p) -> std::optional<double> { return p.at("b") - p.at("a"); }});

    add({"zero", "f = 0", {},
         [](const ParamMap&) { return DistributionalData(1, primitives::make_closed_form("zero"), AlexSpace{}); },
         [](const ParamMap&, double, double) { return 0.0; }, nullptr,
         [](const ParamMap&) -> std::optional<double> { return 0.0; }});
    return reg;
}

const std::map<std::string, CatalogEntry>& registry() {
    static const std::map<std::string, CatalogEntry> reg = build_registry();
    return reg;
}

}  // namespace

std::vector<std::string> catalog_list() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : registry()) keys.push_back(k);
    return keys;
}

const CatalogEntry& entry(const std::string& key) {
    const auto it = registry().find(key);
    if (it == registry().end()) throw InvalidArgument("unknown catalog key '" + key + "'");
    return it->second;
}

ParamMap resolve(const std::string& key, const ParamMap& params) {
    const CatalogEntry& e = entry(key);
    ParamMap out = e.defaults;
    for (const auto& [k, v] : params) {
        if (!e.defaults.contains(k)) throw InvalidArgument("catalog entry '" + key + "' has no parameter '" + k + "'");
        out[k] = v;
    }
    return out;
}

DistributionalData make(const std::string& key, const ParamMap& params) {
    return entry(key).build(resolve(key, params));
}

bool has_oracle(const std::string& key) { return static_cast<bool>(entry(key).oracle); }

double oracle_horizon(const std::string& key, const ParamMap& params) {
    return entry(key).horizon(resolve(key, params));
}

double oracle_eval(const std::string& key, const ParamMap& params, double x, double t) {
    const CatalogEntry& e = entry(key);
    if (!e.oracle) throw InvalidArgument("catalog entry '" + key + "' has no closed-form solution");
    const ParamMap p = resolve(key, params);
    if (!(t > 0.0) || !(t < e.horizon(p))) {
        throw OutOfValidity("t = " + std::to_string(t) + " is outside the validity range of '" + key + "'");
    }
    return e.oracle(p, x, t);
}

std::optional<double> oracle_norm(const std::string& key, const ParamMap& params) {
    const CatalogEntry& e = entry(key);
    return e.oracle_norm(resolve(key, params));
}

double heat_polynomial(int n, double x, double t) {
    if (n < 0) throw InvalidArgument("heat polynomial degree must be >= 0");
    double acc = 0.0;
    for (int l = 0; 2 * l <= n; ++l) {
        const double c = std::tgamma(n + 1.0) / (std::tgamma(n - 2.0 * l + 1.0) * std::tgamma(l + 1.0));
        acc += c * std::pow(x, n - 2 * l) * std::pow(t, l);
    }
    return acc;
}

}  // namespace heatdist::catalog
