#include "heatdist/catalog.hpp"
#include "heatdist/error.hpp"
#include "heatdist/evolve.hpp"
#include "heatdist/kernel.hpp"
#include "heatdist/spaces.hpp"
#include "support.hpp"

using namespace heatdist;
using heatdist::test::kPi;

namespace {

double native_norm(const DistributionalData& d) {
    if (d.weighted()) return spaces::weighted_norm(d).value;
    return d.order() == 1 ? spaces::alex_norm(d).value : spaces::alexn_norm(d).value;
}

// composite Simpson of |u| on [-X, X]
double abs_mass(const std::function<double(double)>& u, double X, int n) {
    const double h = 2.0 * X / n;
    double acc = std::abs(u(-X)) + std::abs(u(X));
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * std::abs(u(-X + i * h));
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("registry") {
    const auto keys = catalog::catalog_list();
    CHECK(keys.size() == 14);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    for (const auto& k : keys) {
        CHECK(catalog::entry(k).key == k);
        CHECK_NOTHROW(catalog::make(k));
    }
    CHECK_THROWS_AS(catalog::entry("nope"), InvalidArgument);
    CHECK_THROWS_AS(catalog::make("gauss", {{"q", 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(catalog::make("neg-gauss", {{"s", 1.0}, {"tau", 1.5}}), InvalidArgument);
    CHECK_THROWS_AS(catalog::make("dirac-diff", {{"n", 1}}), InvalidArgument);
    CHECK_THROWS_AS(catalog::make("chirp", {{"imag", 2}}), InvalidArgument);
    CHECK(catalog::resolve("poly", {{"n", 5}}).at("tau") == 8.0);
    CHECK(catalog::resolve("poly", {{"n", 5}}).at("n") == 5.0);
}

TEST_CASE("frozen oracle values") {
    CHECK(catalog::oracle_eval("poly", {{"n", 3}}, 2.0, 0.5) == doctest::Approx(14.0).epsilon(1e-15));
    CHECK(catalog::oracle_eval("poly", {{"n", 2}}, 1.0, 0.25) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(catalog::oracle_eval("gauss", {{"s", 0.1}}, 0.0, 0.2) ==
          doctest::Approx(0.515032269364252773789590313749).epsilon(1e-14));
    // H_2 = 4x^2 - 2 evolves to 4x^2 - 2 + 8t
    CHECK(catalog::oracle_eval("hermite", {{"n", 2}}, 0.7, 0.1) ==
          doctest::Approx(4 * 0.49 - 2 + 0.8).epsilon(1e-13));
    CHECK(catalog::oracle_eval("sin", {}, kPi / 2, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(catalog::oracle_eval("zero", {}, 3.0, 1.0) == 0.0);
    // chirp at x = 0: Re sqrt(s / (s - i t)) at s = t = 1
    CHECK(catalog::oracle_eval("chirp", {}, 0.0, 1.0) ==
          doctest::Approx(std::pow(2.0, -0.25) * std::cos(kPi / 8)).epsilon(1e-14));
    CHECK(catalog::oracle_eval("step", {}, 0.5, 1e-4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oracle validity") {
    CHECK(catalog::oracle_horizon("hermite") == 0.25);
    CHECK(catalog::oracle_horizon("neg-gauss") == 1.5);
    CHECK(std::isinf(catalog::oracle_horizon("gauss")));
    CHECK_THROWS_AS(catalog::oracle_eval("hermite", {}, 0.0, 0.25), OutOfValidity);
    CHECK_THROWS_AS(catalog::oracle_eval("neg-gauss", {}, 0.0, 1.6), OutOfValidity);
    CHECK_THROWS_AS(catalog::oracle_eval("gauss", {}, 0.0, 0.0), OutOfValidity);
    CHECK_THROWS_AS(catalog::oracle_eval("gauss", {}, 0.0, -1.0), OutOfValidity);
    CHECK(!catalog::has_oracle("cantor-deriv"));
    CHECK_THROWS_AS(catalog::oracle_eval("cantor-deriv", {}, 0.0, 0.1), InvalidArgument);
}

TEST_CASE("heat polynomials") {
    CHECK(catalog::heat_polynomial(0, 3.0, 2.0) == 1.0);
    CHECK(catalog::heat_polynomial(1, 3.0, 2.0) == 3.0);
    CHECK(catalog::heat_polynomial(4, 1.0, 1.0) == doctest::Approx(1 + 12 + 12).epsilon(1e-15));
    // u_t = u_xx by finite differences
    const double x = 0.8, t = 0.3, h = 1e-3;
    for (int n = 2; n <= 7; ++n) {
        const double ut = (catalog::heat_polynomial(n, x, t + h) - catalog::heat_polynomial(n, x, t - h)) / (2 * h);
        const double uxx = (catalog::heat_polynomial(n, x + h, t) - 2 * catalog::heat_polynomial(n, x, t) +
                            catalog::heat_polynomial(n, x - h, t)) /
                           (h * h);
        CHECK(ut == doctest::Approx(uxx).epsilon(1e-5));
    }
}

TEST_CASE("closed-form norms agree with computed norms") {
    const std::vector<std::pair<std::string, ParamMap>> cases{
        {"gauss", {}},     {"gauss-prime", {}},         {"gauss-prime", {{"s", 1.0}}}, {"neg-gauss", {}},
        {"step", {}},      {"step", {{"b", 3.5}}},      {"dirac-diff", {}},            {"dirac-diff", {{"n", 4}}},
        {"alg-sing", {}},  {"alg-sing", {{"alpha", 1.5}}}, {"zero", {}}};
    for (const auto& [key, params] : cases) {
        INFO(key);
        const auto expect = catalog::oracle_norm(key, params);
        REQUIRE(expect.has_value());
        CHECK(native_norm(catalog::make(key, params)) == doctest::Approx(*expect).epsilon(1e-8));
    }
    CHECK(!catalog::oracle_norm("sin").has_value());
}

TEST_CASE("oracles agree with the convolution") {
    const std::vector<std::pair<std::string, ParamMap>> cases{
        {"gauss", {}},       {"gauss-prime", {}},      {"neg-gauss", {}}, {"sin", {{"s", 2.0}}},
        {"chirp", {}},       {"chirp", {{"imag", 1}}}, {"poly", {}},      {"hermite", {{"n", 3}}},
        {"dirac-diff", {}},  {"dirac-diff", {{"n", 3}}}, {"non-lp", {}},  {"step", {}}};
    for (const auto& [key, params] : cases) {
        const auto data = catalog::make(key, params);
        const double t = std::min(0.5, 0.5 * catalog::oracle_horizon(key, params));
        for (double x : {-1.5, 0.3, 2.0}) {
            INFO(key << " x=" << x);
            const double want = catalog::oracle_eval(key, params, x, t);
            CHECK(std::abs(evolve::convolve(data, t, x, 1e-11) - want) <= 1e-8 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("non-lp: local mass keeps growing while the norm stays finite") {
    const ParamMap p{{"s", 0.1}, {"N", 8}, {"t0", 0.1}};
    const double t = 0.1;
    const double shift = 2.0 * std::sqrt(0.2);
    const auto u = [&](double x) { return catalog::oracle_eval("non-lp", p, x, t); };
    double prev = 0.0;
    for (int n : {4, 6, 8}) {
        const double X = shift * n * n + 1.0;
        const double m = abs_mass(u, X, 40000);
        CHECK(m > prev + 0.9 / std::log(n + 1.0));
        prev = m;
    }
    CHECK(spaces::alex_norm(catalog::make("non-lp", p)).value < 1.0 / std::log(2.0) + 1e-12);

    // truncations converge in norm: the alternating tail is bounded by its first term
    const auto full = catalog::make("non-lp", p).primitive();
    for (int M : {2, 4, 6}) {
        ParamMap q = p;
        q["N"] = M;
        const auto part = catalog::make("non-lp", q).primitive();
        const double gap = spaces::primitive_norm([&](double x) { return full(x) - part(x); }, 0.0,
                                                  *full.limit_pos() - *part.limit_pos())
                               .value;
        CHECK(gap <= 1.0 / std::log(M + 2.0) + 1e-9);
    }
}
