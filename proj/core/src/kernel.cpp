#include "heatdist/kernel.hpp"

#include "heatdist/error.hpp"
#include "heatdist/realline.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>

namespace heatdist::kernel {

struct HermiteTable::Impl {
    mutable std::shared_mutex mutex;
    std::vector<std::vector<BigInt>> rows;
    std::vector<std::vector<double>> rows_double;
};

namespace {

void append_row(std::vector<std::vector<BigInt>>& rows, std::vector<std::vector<double>>& as_double) {
    const std::size_t n = rows.size();
    std::vector<BigInt> next(n + 1, BigInt{0});
    if (n == 0) {
        next[0] = 1;
    } else {
        const auto& prev = rows[n - 1];
        for (std::size_t k = 0; k < prev.size(); ++k) next[k + 1] += 2 * prev[k];
        if (n >= 2) {
            const auto& prev2 = rows[n - 2];
            const BigInt factor = 2 * static_cast<long>(n - 1);
            for (std::size_t k = 0; k < prev2.size(); ++k) next[k] -= factor * prev2[k];
        }
    }
    std::vector<double> d(next.size());
    for (std::size_t k = 0; k < next.size(); ++k) d[k] = next[k].convert_to<double>();
    rows.push_back(std::move(next));
    as_double.push_back(std::move(d));
}

}  // namespace

HermiteTable::HermiteTable(int max_degree) : impl_(std::make_shared<Impl>()) {
    if (max_degree < 0 || max_degree > kHermiteHardCap) {
        throw InvalidArgument("Hermite table degree out of range");
    }
    while (static_cast<int>(impl_->rows.size()) <= max_degree) append_row(impl_->rows, impl_->rows_double);
}

int HermiteTable::max_degree() const {
    std::shared_lock lock(impl_->mutex);
    return static_cast<int>(impl_->rows.size()) - 1;
}

void HermiteTable::ensure(int n) const {
    if (n < 0) throw InvalidArgument("Hermite degree must be nonnegative");
    if (n > kHermiteHardCap) {
        throw InvalidArgument("Hermite degree " + std::to_string(n) + " exceeds the hard cap");
    }
    {
        std::shared_lock lock(impl_->mutex);
        if (static_cast<int>(impl_->rows.size()) > n) return;
    }
    std::unique_lock lock(impl_->mutex);
    while (static_cast<int>(impl_->rows.size()) <= n) append_row(impl_->rows, impl_->rows_double);
}

std::vector<BigInt> HermiteTable::coefficients(int n) const {
    ensure(n);
    std::shared_lock lock(impl_->mutex);
    return impl_->rows[static_cast<std::size_t>(n)];
}

double HermiteTable::evaluate(int n, double x) const {
    ensure(n);
    std::shared_lock lock(impl_->mutex);
    const auto& c = impl_->rows_double[static_cast<std::size_t>(n)];
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

const HermiteTable& HermiteTable::shared() {
    static const HermiteTable table(kHermiteDefaultMax);
    return table;
}

double theta(double t, double x) {
    if (!(t > 0.0)) throw InvalidArgument("theta requires t > 0 (use theta_signed for t < 0)");
    return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

double theta_signed(double t, double x) {
    if (t == 0.0 || std::isnan(t)) throw InvalidArgument("theta_signed requires t != 0");
    return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * std::abs(t));
}

double hermite(int n, double x) { return HermiteTable::shared().evaluate(n, x); }

double theta_deriv(int m, double t, double x) {
    if (m < 0) throw InvalidArgument("derivative order must be nonnegative");
    const double base = theta(t, x);
    if (m == 0) return base;
    if (base == 0.0) return 0.0;
    const double scale = 2.0 * std::sqrt(t);
    return std::pow(-scale, -m) * base * hermite(m, x / scale);
}

std::vector<double> hermite_roots(int n) {
    if (n < 0) throw InvalidArgument("Hermite degree must be nonnegative");
    std::vector<double> roots;
    if (n == 0) return roots;
    const HermiteTable& table = HermiteTable::shared();
    const double r = std::sqrt(2.0 * n + 1.0) + 0.1;
    const std::size_t steps = 400 * static_cast<std::size_t>(n);
    const double h = 2.0 * r / static_cast<double>(steps);
    // half-offset grid with an even point count: x = 0 is never sampled
    double xa = -r + 0.5 * h;
    double fa = table.evaluate(n, xa);
    for (std::size_t i = 1; i < steps; ++i) {
        const double xb = -r + (static_cast<double>(i) + 0.5) * h;
        const double fb = table.evaluate(n, xb);
        if (fa == 0.0) {
            roots.push_back(xa);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            double lo = xa;
            double hi = xb;
            double flo = fa;
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fm = table.evaluate(n, mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        xa = xb;
        fa = fb;
    }
    if (static_cast<int>(roots.size()) != n) {
        throw RootIsolationFailure("isolated " + std::to_string(roots.size()) + " roots of H_" +
                                   std::to_string(n));
    }
    return roots;
}

double kernel_variation_constant(int n, double tol) {
    if (n < 1) throw InvalidArgument("kernel_variation_constant requires n >= 1");
    const std::vector<double> roots = hermite_roots(n);
    const HermiteTable& table = HermiteTable::shared();
    // Cut where exp(-x^2) (2x)^n is far below tol.
    double cut = std::sqrt(2.0 * n + 1.0) + 1.0;
    while (n * std::log(2.0 * cut) - cut * cut > std::log(tol) - 12.0) cut += 0.5;
    const auto integrand = [&table, n](double x) { return std::abs(table.evaluate(n, x)) * std::exp(-x * x); };
    const auto q = realline::integrate_interval(integrand, -cut, cut, tol, roots);
    return q.value / (std::ldexp(1.0, n) * std::sqrt(std::numbers::pi));
}

double cramer_bound(int n) {
    return 1.087 * std::sqrt(std::tgamma(n + 1.0)) * std::pow(2.0, 0.5 * (1.0 - n));
}

}  // namespace heatdist::kernel
