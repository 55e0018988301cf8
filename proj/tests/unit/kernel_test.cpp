#include "heatdist/error.hpp"
#include "heatdist/kernel.hpp"
#include "heatdist/realline.hpp"
#include "support.hpp"

#include <random>
#include <thread>
#include <vector>

using namespace heatdist;
using heatdist::test::kPi;

TEST_CASE("theta") {
    CHECK(kernel::theta(0.25, 0.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
    CHECK(kernel::theta(0.7, 1.3) == kernel::theta(0.7, -1.3));
    CHECK(kernel::theta(1e-3, 2.0) == 0.0);  // underflow is an exact zero
    for (double t : {0.01, 1.0, 100.0}) {
        CHECK(kernel::theta(t, 0.5) > 0.0);
        const auto m = realline::integrate_real_line([t](double x) { return kernel::theta(t, x); },
                                                     realline::DecayHint::gaussian(1.0 / (4.0 * t)), 1e-12);
        CHECK(std::abs(m.value - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(kernel::theta(0.0, 1.0), InvalidArgument);
}

TEST_CASE("theta with signed time") {
    CHECK(kernel::theta_signed(-1.0, 0.0) == doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-15));
    // e / (2 sqrt(pi)) in 30-digit arithmetic
    CHECK(kernel::theta_signed(-1.0, 2.0) == doctest::Approx(0.766813146381871112575610154781).epsilon(1e-14));
    CHECK(kernel::theta_signed(0.3, 0.4) == kernel::theta(0.3, 0.4));
    CHECK_THROWS_AS(kernel::theta_signed(0.0, 1.0), InvalidArgument);
}

TEST_CASE("product identity Theta_a Theta_b") {
    const double a = 0.5;
    const double b = 1.5;
    for (int i = -20; i <= 20; ++i) {
        const double x = 0.25 * i;
        const double lhs = kernel::theta(a, x) * kernel::theta(b, x);
        const double rhs = kernel::theta(a * b / (a + b), x) / (2.0 * std::sqrt(kPi * (a + b)));
        CHECK(std::abs(lhs - rhs) <= 1e-13);
    }
}

TEST_CASE("Hermite polynomials") {
    CHECK(kernel::hermite(0, 3.7) == 1.0);
    CHECK(kernel::hermite(1, 2.0) == 4.0);
    CHECK(kernel::hermite(3, 1.0) == -4.0);
    CHECK(kernel::hermite(4, 0.0) == 12.0);
    const auto& table = kernel::HermiteTable::shared();
    const auto c5 = table.coefficients(5);  // 32x^5 - 160x^3 + 120x
    REQUIRE(c5.size() == 6);
    CHECK(c5[5] == 32);
    CHECK(c5[3] == -160);
    CHECK(c5[1] == 120);
    CHECK(c5[0] == 0);
    // on-demand growth past the default size
    CHECK(table.coefficients(40).size() == 41);
    CHECK_THROWS_AS(table.coefficients(kernel::kHermiteHardCap + 1), InvalidArgument);
}

TEST_CASE("Hermite table is safe to extend concurrently") {
    kernel::HermiteTable table(4);
    std::vector<std::thread> pool;
    std::vector<double> out(8);
    for (int i = 0; i < 8; ++i) {
        pool.emplace_back([&, i] { out[i] = table.evaluate(20 + i, 0.3); });
    }
    for (auto& th : pool) th.join();
    for (int i = 0; i < 8; ++i) CHECK(out[i] == kernel::hermite(20 + i, 0.3));
}

TEST_CASE("theta derivatives") {
    CHECK(kernel::theta_deriv(0, 0.4, 0.9) == kernel::theta(0.4, 0.9));
    CHECK(kernel::theta_deriv(1, 0.25, 1.0) == doctest::Approx(-0.415107497420594703340268249441).epsilon(1e-14));
    const double t = 0.6;
    CHECK(kernel::theta_deriv(2, t, 0.0) == doctest::Approx(-kernel::theta(t, 0.0) / (2.0 * t)).epsilon(1e-14));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.1, 2.0);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (int m = 1; m <= 3; ++m) {
        for (int i = 0; i < 10; ++i) {
            const double tt = ut(rng);
            const double x = ux(rng);
            const double h = 1e-4 * std::sqrt(tt);
            const double fd = (kernel::theta_deriv(m - 1, tt, x + h) - kernel::theta_deriv(m - 1, tt, x - h)) / (2 * h);
            const double exact = kernel::theta_deriv(m, tt, x);
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(std::abs(exact), kernel::theta_deriv(0, tt, 0.0) / tt));
        }
    }
    // decay under any slower envelope
    for (int m = 0; m <= 4; ++m) {
        double peak = 0.0;
        for (int i = -400; i <= 400; ++i) peak = std::max(peak, std::abs(kernel::theta_deriv(m, 0.5, 0.02 * i)));
        for (int i = -400; i <= 400; ++i) {
            const double x = 0.05 * i;
            CHECK(std::abs(kernel::theta_deriv(m, 0.5, x)) <= 10.0 * peak * std::exp(-x * x / 4.0) + 1e-300);
        }
    }
}

TEST_CASE("variation constants") {
    // 30-digit quadrature of |H_n| e^{-x^2} split at the roots
    const double ref[] = {0.564189583547756286948079451561, 0.483941449038286699595660385871,
                          0.533870216036051726113365916402, 0.700150075207459001087369832354,
                          1.04476544041386993507740012474};
    for (int n = 1; n <= 5; ++n) CHECK(kernel::kernel_variation_constant(n) == doctest::Approx(ref[n - 1]).epsilon(1e-11));
    CHECK(kernel::kernel_variation_constant(1) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-12));
    CHECK(kernel::kernel_variation_constant(2) == doctest::Approx(std::sqrt(2.0 / (kPi * std::exp(1.0)))).epsilon(1e-12));
    for (int n = 1; n <= 12; ++n) CHECK(kernel::kernel_variation_constant(n) <= kernel::cramer_bound(n));
    CHECK_THROWS_AS(kernel::kernel_variation_constant(0), InvalidArgument);
}

TEST_CASE("variation scaling in t") {
    for (int m = 0; m <= 2; ++m) {
        for (double t : {0.25, 1.0, 4.0}) {
            const double v = realline::total_variation(
                [m, t](double x) { return kernel::theta_deriv(m, t, x); },
                RealFn([m, t](double x) { return kernel::theta_deriv(m + 1, t, x); }),
                realline::DecayHint::gaussian(1.0 / (8.0 * t)), 1e-11);
            CHECK(v == doctest::Approx(kernel::kernel_variation_constant(m + 1) * std::pow(t, -(m + 1) / 2.0))
                           .epsilon(1e-6));
        }
    }
}

TEST_CASE("Hermite roots") {
    const auto r3 = kernel::hermite_roots(3);
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-13));
    CHECK(std::abs(r3[1]) < 1e-13);
    CHECK(r3[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-13));
    CHECK(kernel::hermite_roots(0).empty());
    const auto r12 = kernel::hermite_roots(12);
    CHECK(r12.size() == 12);
    for (double r : r12) CHECK(std::abs(kernel::hermite(12, r)) < 1e-6 * kernel::hermite(12, 0.0) * 1e3);
}

TEST_CASE("Cramer bound") {
    CHECK(kernel::cramer_bound(1) == doctest::Approx(1.087));
    CHECK(kernel::cramer_bound(3) == doctest::Approx(1.087 * std::sqrt(6.0) * 0.5));
}
