#pragma once

// The Gauss-Weierstrass kernel Theta_t(x) = (4 pi |t|)^{-1/2} exp(-x^2 / (4t)),
// its x-derivatives in Hermite form, and the variation constants c_n.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <memory>
#include <vector>

namespace heatdist::kernel {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kHermiteDefaultMax = 32;
inline constexpr int kHermiteHardCap = 128;

// Integer coefficient rows of the physicists' Hermite polynomials, built by
// H_{n+1} = 2x H_n - 2n H_{n-1}. Grows on demand up to kHermiteHardCap;
// the shared instance is safe for concurrent use.
class HermiteTable {
public:
    explicit HermiteTable(int max_degree = kHermiteDefaultMax);

    int max_degree() const;
    // Coefficients of H_n, lowest power first. Extends the table if needed.
    std::vector<BigInt> coefficients(int n) const;
    double evaluate(int n, double x) const;

    static const HermiteTable& shared();

private:
    void ensure(int n) const;
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Theta_t(x) for t > 0.
double theta(double t, double x);
// Same formula for any t != 0; grows like exp(x^2 / (4|t|)) when t < 0.
double theta_signed(double t, double x);
double hermite(int n, double x);
// m-th x-derivative of Theta_t: (-2 sqrt t)^{-m} Theta_t(x) H_m(x / (2 sqrt t)).
double theta_deriv(int m, double t, double x);

// c_n = (2^n sqrt(pi))^{-1} int |H_n(x)| exp(-x^2) dx, so that the total
// variation of Theta_t^{(n-1)} equals c_n t^{-n/2}.
double kernel_variation_constant(int n, double tol = 1e-12);

// Real roots of H_n, ascending, isolated by sign-change scan and bisection.
std::vector<double> hermite_roots(int n);

// 1.087 sqrt(n!) 2^{(1-n)/2}.
double cramer_bound(int n);

}  // namespace heatdist::kernel
