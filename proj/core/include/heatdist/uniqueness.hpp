#pragma once

// Uniqueness probes: step weights g_n, iterated-integral weights G_n with their
// Eulerian knot values, the psi_y averaging functional, and boundedness
// classification of norm trajectories.

#include "heatdist/primitives.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace heatdist::uniqueness {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kEulerianMax = 20;
inline constexpr int kWeightMax = 20;

// A(n, l) = sum_{k=0}^{l} C(n+1, k) (-1)^k (l+1-k)^n, exact.
BigInt eulerian_exact(int n, int l);
// Same value as a machine integer; n must lie in [1, kEulerianMax].
std::int64_t eulerian(int n, int l);

// A(n, l) for 0 <= l <= n <= n_max, filled by the recurrence
// A(n, l) = (l + 1) A(n-1, l) + (n - l) A(n-1, l-1).
class EulerianTable {
public:
    explicit EulerianTable(int n_max);
    int n_max() const noexcept { return n_max_; }
    const BigInt& operator()(int n, int l) const;

private:
    int n_max_;
    std::vector<std::vector<BigInt>> rows_;
};

// T_{n,m} = sum_{k=0}^{n} C(n, k) (-1)^k k^m with 0^0 = 1.
BigInt alternating_power_sum(int n, int m);

// sum_k C(n, k) (-1)^k chi_{(a_k, a_{k+1})}(x), a_k = k / (n + 1); 0 at knots.
double g_step(int n, double x);

// G_n on [0, 1] as exact rational polynomial pieces, one per knot interval,
// in powers of (x - a_j). Zero outside [0, 1].
class WeightG {
public:
    explicit WeightG(int n);

    int n() const noexcept { return n_; }
    double operator()(double x) const;
    Rational exact(const Rational& x) const;
    // a_k = k / (n + 1)
    Rational knot(int k) const;
    // pieces()[j][p] multiplies (x - a_j)^p on [a_j, a_{j+1}].
    const std::vector<std::vector<Rational>>& pieces() const noexcept { return pieces_; }

private:
    int n_;
    std::vector<std::vector<Rational>> pieces_;
    std::vector<std::vector<double>> pieces_double_;
};

WeightG weight_G(int n);

using FieldFn = std::function<double(double x, double t)>;

// (1/2y) int_{x-y}^{x+y} w(xi) u(xi, t) dxi with w = 1 for n = 1 and
// w = G_{n-1}((xi - x + y) / (2y)) for n >= 2.
double psi_probe(const FieldFn& u, int n, double y, double x, double t, double tol = 1e-10);

struct AlexProbe {};
struct AlexNProbe {
    int n;
};
// Norm ||u_t||_sigma sqrt(tau - sigma - t). rho is the auxiliary exponent of
// the weighted uniqueness argument; both orderings relative to sigma are
// accepted and reported.
struct WeightedProbe {
    double tau;
    double sigma;
    double rho;
};
using ProbeSpace = std::variant<AlexProbe, AlexNProbe, WeightedProbe>;

struct Trajectory {
    FieldFn value;
    // B_c primitive of u_t, required for alex and alexn probes.
    std::function<Primitive(double t)> primitive;
};

struct ProbeOptions {
    double psi_x = 0.0;
    std::vector<double> psi_y{0.1, 0.01, 0.001};
};

struct PsiRow {
    double y;
    double value;
};

struct ProbeReport {
    std::string space;
    std::map<std::string, double> params;
    std::vector<double> t;
    std::vector<double> norm;
    double slope = 0.0;
    double r_squared = 0.0;
    std::string classification;  // "bounded" or "diverging"
    double rate_exponent = 0.0;  // fitted slope when diverging, else 0
    double psi_x = 0.0;
    double psi_t = 0.0;
    std::vector<PsiRow> psi;
    std::string hypothesis;
    bool hypothesis_holds = false;
};

// Least-squares slope and R^2 of log(norm) against log(t) on the smallest-t
// half of the grid (at least three points).
std::pair<double, double> fit_loglog(const std::vector<double>& t, const std::vector<double>& norm);

ProbeReport uniqueness_probe(const Trajectory& u, const ProbeSpace& space, std::vector<double> t_grid,
                             double tol = 1e-10, const ProbeOptions& opts = {});

}  // namespace heatdist::uniqueness
