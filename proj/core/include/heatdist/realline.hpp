#pragma once

// Numeric substrate: adaptive quadrature on intervals and on the real line,
// total variation, and global extremum search over the extended real line.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace heatdist {

using RealFn = std::function<double(double)>;

namespace realline {

inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr double kDefaultArgumentTol = 1e-8;
inline constexpr std::size_t kDefaultMaxIntervals = 4000;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    std::size_t evaluations = 0;
};

struct GaussianDecay {
    double rate;    // envelope exp(-rate (x - center)^2)
    double center;
};
struct CompactDecay {
    double a;
    double b;
};
struct NoDecay {};

// Envelope information used to truncate infinite-interval integrals.
class DecayHint {
public:
    static DecayHint gaussian(double rate, double center = 0.0);
    static DecayHint compact(double a, double b);
    static DecayHint none() { return DecayHint{NoDecay{}}; }

    const std::variant<GaussianDecay, CompactDecay, NoDecay>& kind() const noexcept { return kind_; }
    bool is_none() const noexcept { return std::holds_alternative<NoDecay>(kind_); }

    // Finite window [lo, hi] outside of which the envelope is below tol * 1e-2
    // of its peak. Throws UnsupportedDecay for none().
    std::pair<double, double> window(double tol) const;

private:
    explicit DecayHint(std::variant<GaussianDecay, CompactDecay, NoDecay> k) : kind_(k) {}
    std::variant<GaussianDecay, CompactDecay, NoDecay> kind_;
};

// R such that exp(-rate R^2) = tol * 1e-2.
double truncation_radius(double rate, double tol);

// Hint window, widened for Gaussian hints until |g| at both edges is below
// tol * 1e-2 of the largest sampled |g| (covers polynomial prefactors that the
// envelope constant does not).
std::pair<double, double> effective_window(const RealFn& g, const DecayHint& hint, double tol);

// Global adaptive Gauss-Kronrod (10/21) quadrature. Stops when the summed
// error estimate is below max(tol |value|, tol (1 + |b - a|)). Interior
// breakpoints, if any, seed the initial partition.
QuadratureResult integrate_interval(const RealFn& g, double a, double b, double tol,
                                    std::span<const double> breakpoints = {},
                                    std::size_t max_intervals = kDefaultMaxIntervals);

// Integral over R using the decay hint to truncate. The reported error adds
// the Gaussian tail bound (peak magnitude times the discarded envelope mass).
QuadratureResult integrate_real_line(const RealFn& g, const DecayHint& hint, double tol,
                                     std::span<const double> breakpoints = {},
                                     std::size_t max_intervals = kDefaultMaxIntervals);

// Total variation over R. With a derivative, integrates |g'|; otherwise sums
// |g(x_{i+1}) - g(x_i)| over nested uniform partitions of the truncation window
// (64 panels doubling to 2^20) until successive sums differ by less than tol.
// Outside the window g is assumed constant. Throws UnboundedVariation.
double total_variation(const RealFn& g, const std::optional<RealFn>& g_deriv, const DecayHint& hint,
                       double tol);

struct ExtremumReport {
    double sup = 0.0;
    double inf = 0.0;
    double arg_sup = 0.0;  // may be +-infinity when the limit is the extremum
    double arg_inf = 0.0;
    double refinement_error = 0.0;
};

struct ExtremumOptions {
    double tol = kDefaultArgumentTol;  // golden-section stopping width in x
    std::size_t grid = 2048;           // compactified scan points
    std::size_t candidates = 8;        // local extrema refined per side
    std::vector<double> extra_points;  // abscissae always scanned (kinks, known extrema)
};

// Global sup and inf of a continuous F on the extended real line with
// the supplied limits at -infinity and +infinity.
ExtremumReport sup_inf(const RealFn& F, double limit_neg, double limit_pos,
                       const ExtremumOptions& opts = {});

// erfc(x) = (2 / sqrt(pi)) int_x^inf exp(-y^2) dy.
double erfc_tail(double x);

// Fresnel integrals C(z) = int_0^z cos(pi u^2 / 2) du, S(z) likewise with sin.
double fresnel_c(double z);
double fresnel_s(double z);

// int_0^z exp(u^2) du by its positive-term power series (odd in z).
double exp_square_integral(double z);

}  // namespace realline
}  // namespace heatdist
