#include "heatdist/primitives.hpp"

#include "heatdist/error.hpp"
#include "heatdist/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace heatdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double param(const ParamMap& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

double required(const ParamMap& p, const std::string& key, const std::string& who) {
    const auto it = p.find(key);
    if (it == p.end()) throw InvalidArgument(who + ": missing parameter '" + key + "'");
    return it->second;
}

int integer_param(double v, const std::string& who, const std::string& key) {
    if (std::floor(v) != v) throw InvalidArgument(who + ": parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

double positive(double v, const std::string& who, const std::string& key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(who + ": parameter '" + key + "' must be positive");
    }
    return v;
}

double gauss_cdf(double s, double x) { return 0.5 * std::erfc(-x / (2.0 * std::sqrt(s))); }

}  // namespace

Primitive::Primitive(Spec spec) {
    if (!spec.eval) throw InvalidArgument("primitive requires an evaluator");
    if (spec.support && !(spec.support->first < spec.support->second)) {
        throw InvalidArgument("primitive support must satisfy a < b");
    }
    if (const auto* w = std::get_if<WeightedGrowth>(&spec.growth); w && !(w->tau > 0.0)) {
        throw InvalidArgument("weighted growth requires tau > 0");
    }
    std::sort(spec.breakpoints.begin(), spec.breakpoints.end());
    spec_ = std::make_shared<const Spec>(std::move(spec));
}

double Primitive::growth_tau() const noexcept {
    if (const auto* w = std::get_if<WeightedGrowth>(&spec_->growth)) return w->tau;
    return kInf;
}

bool Primitive::in_bc() const noexcept {
    return bounded() && spec_->limit_neg && *spec_->limit_neg == 0.0 && spec_->limit_pos.has_value();
}

std::string describe(const Space& space) {
    if (std::holds_alternative<AlexSpace>(space)) return "alex";
    if (std::holds_alternative<AlexNSpace>(space)) return "alexn";
    std::ostringstream os;
    os << "weighted:tau=" << std::get<WeightedSpace>(space).tau;
    return os.str();
}

DistributionalData::DistributionalData(int order, Primitive primitive, Space space)
    : order_(order), primitive_(std::move(primitive)), space_(space) {
    if (order_ < 1) throw InvalidArgument("distributional order must be >= 1");
    if (std::holds_alternative<AlexSpace>(space_)) {
        if (order_ != 1) throw InvalidArgument("space alex carries order 1 only (use alexn)");
        if (!primitive_.in_bc()) throw InvalidArgument("alex data needs a primitive in B_c");
    } else if (std::holds_alternative<AlexNSpace>(space_)) {
        if (order_ < 2) throw InvalidArgument("space alexn requires order >= 2");
        if (!primitive_.in_bc()) throw InvalidArgument("alexn data needs a primitive in B_c");
    } else {
        const double tau = std::get<WeightedSpace>(space_).tau;
        if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("weighted space needs finite tau > 0");
        if (order_ != 1) throw InvalidArgument("weighted data carries order 1 only");
        // F = o(exp(x^2 / (4 tau))): growth exponent must not exceed the weight's.
        if (!primitive_.bounded() && !(primitive_.growth_tau() > tau)) {
            throw InvalidArgument("primitive grows too fast for the weighted space tau = " +
                                  std::to_string(tau));
        }
    }
}

double DistributionalData::tau() const {
    if (const auto* w = std::get_if<WeightedSpace>(&space_)) return w->tau;
    throw InvalidArgument("data is not in a weighted space");
}

namespace primitives {

double cantor_eval(double x, int depth) {
    if (depth < 1) throw InvalidArgument("cantor_eval depth must be >= 1");
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    double result = 0.0;
    double weight = 0.5;
    for (int k = 0; k < depth; ++k) {
        x *= 3.0;
        const double digit = std::floor(x);
        x -= digit;
        if (digit >= 2.0) {
            result += weight;
        } else if (digit >= 1.0) {
            return result + weight;
        }
        weight *= 0.5;
    }
    return result;
}

int weierstrass_terms(double a, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("weierstrass tolerance must be positive");
    int k = 1;
    while (std::pow(a, k) / (1.0 - a) >= tol) ++k;
    return k;
}

double weierstrass_partial(double x, double a, int b, int terms) {
    double sum = 0.0;
    double amp = 1.0;
    double freq = 1.0;
    for (int k = 0; k < terms; ++k) {
        // cos(pi m) only needs m mod 2
        const double arg = std::fmod(freq * x, 2.0);
        sum += amp * std::cos(std::numbers::pi * arg);
        amp *= a;
        freq *= b;
    }
    return sum;
}

double weierstrass_eval(double x, double a, int b, double tol) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("weierstrass requires 0 < a < 1");
    if (b < 3 || b % 2 == 0) throw InvalidArgument("weierstrass requires an odd integer b >= 3");
    if (a * b < 1.0) throw InvalidArgument("weierstrass requires a b >= 1 (nowhere differentiable)");
    return weierstrass_partial(x, a, b, weierstrass_terms(a, tol));
}

Primitive make_closed_form(const std::string& name, const ParamMap& p) {
    using realline::DecayHint;
    Primitive::Spec s;
    s.name = name;
    if (name == "zero") {
        s.eval = [](double) { return 0.0; };
        s.limit_neg = 0.0;
        s.limit_pos = 0.0;
        s.density = [](double) { return 0.0; };
        s.density_decay = DecayHint::compact(-1.0, 1.0);
        s.variation = 0.0;
    } else if (name == "gauss") {
        const double sv = positive(required(p, "s", name), name, "s");
        s.eval = [sv](double x) { return kernel::theta(sv, x); };
        s.limit_neg = 0.0;
        s.limit_pos = 0.0;
        s.density = [sv](double x) { return kernel::theta_deriv(1, sv, x); };
        s.density_decay = DecayHint::gaussian(1.0 / (8.0 * sv));
        s.variation = 1.0 / std::sqrt(std::numbers::pi * sv);
    } else if (name == "gauss-cdf") {
        const double sv = positive(required(p, "s", name), name, "s");
        s.eval = [sv](double x) { return gauss_cdf(sv, x); };
        s.limit_neg = 0.0;
        s.limit_pos = 1.0;
        s.density = [sv](double x) { return kernel::theta(sv, x); };
        s.density_decay = DecayHint::gaussian(1.0 / (4.0 * sv));
        s.variation = 1.0;
    } else if (name == "step-ramp" || name == "ramp") {
        const double a = name == "ramp" ? param(p, "a", 0.0) : 0.0;
        const double b = name == "ramp" ? param(p, "b", 1.0) : 1.0;
        if (!(a < b)) throw InvalidArgument(name + ": requires a < b");
        s.eval = [a, b](double x) { return std::clamp(x - a, 0.0, b - a); };
        s.limit_neg = 0.0;
        s.limit_pos = b - a;
        s.density = [a, b](double x) { return (x > a && x < b) ? 1.0 : 0.0; };
        s.density_decay = DecayHint::compact(a, b);
        s.variation = b - a;
        s.support = std::make_pair(a, b);
        s.breakpoints = {a, b};
    } else if (name == "cantor") {
        const int depth = integer_param(param(p, "depth", 64), name, "depth");
        if (depth < 1) throw InvalidArgument("cantor: depth must be >= 1");
        s.eval = [depth](double x) { return cantor_eval(x, depth); };
        s.limit_neg = 0.0;
        s.limit_pos = 1.0;
        s.variation = 1.0;
        s.support = std::make_pair(0.0, 1.0);
        s.breakpoints = {0.0, 1.0};
    } else if (name == "weierstrass-damped") {
        const double a = param(p, "a", 0.5);
        const int b = integer_param(param(p, "b", 3), name, "b");
        const int terms = integer_param(param(p, "terms", 6), name, "terms");
        weierstrass_eval(0.0, a, b, 0.5);  // parameter validation
        if (terms < 1) throw InvalidArgument(name + ": terms must be >= 1");
        s.eval = [a, b, terms](double x) {
            return weierstrass_partial(x, a, b, terms) * std::exp(-std::abs(x));
        };
        s.limit_neg = 0.0;
        s.limit_pos = 0.0;
        s.breakpoints = {0.0};
    } else if (name == "alg-sing") {
        const double alpha = positive(required(p, "alpha", name), name, "alpha");
        s.eval = [alpha](double x) { return x > 0.0 ? std::pow(x, alpha) * std::exp(-x) : 0.0; };
        s.limit_neg = 0.0;
        s.limit_pos = 0.0;
        s.density = [alpha](double x) {
            return x > 0.0 ? (alpha * std::pow(x, alpha - 1.0) - std::pow(x, alpha)) * std::exp(-x) : 0.0;
        };
        s.variation = 2.0 * std::pow(alpha, alpha) * std::exp(-alpha);
        s.breakpoints = {0.0, alpha};
    } else if (name == "fresnel-cos" || name == "fresnel-sin") {
        const double sv = positive(required(p, "s", name), name, "s");
        const double scale = std::sqrt(2.0 * std::numbers::pi * sv);
        const bool cosine = name == "fresnel-cos";
        s.eval = [scale, cosine](double x) {
            const double z = x / scale;
            return scale * (0.5 + (cosine ? realline::fresnel_c(z) : realline::fresnel_s(z)));
        };
        s.limit_neg = 0.0;
        s.limit_pos = scale;
        s.density = [sv, cosine](double x) {
            const double ph = x * x / (4.0 * sv);
            return cosine ? std::cos(ph) : std::sin(ph);
        };
    } else if (name == "neg-gauss") {
        const double sv = positive(required(p, "s", name), name, "s");
        const double scale = 2.0 * std::sqrt(sv);
        s.eval = [scale](double x) {
            return realline::exp_square_integral(x / scale) / std::sqrt(std::numbers::pi);
        };
        s.growth = WeightedGrowth{sv};
        s.density = [sv](double x) { return kernel::theta_signed(-sv, x); };
    } else if (name == "sin") {
        const double sv = positive(required(p, "s", name), name, "s");
        s.eval = [sv](double x) { return (1.0 - std::cos(sv * x)) / sv; };
        s.density = [sv](double x) { return std::sin(sv * x); };
    } else if (name == "poly") {
        const int n = integer_param(required(p, "n", name), name, "n");
        if (n < 0) throw InvalidArgument("poly: n must be >= 0");
        s.eval = [n](double x) { return std::pow(x, n + 1) / (n + 1); };
        s.growth = WeightedGrowth{kInf};
        s.density = [n](double x) { return n == 0 ? 1.0 : std::pow(x, n); };
    } else if (name == "hermite") {
        const int n = integer_param(required(p, "n", name), name, "n");
        if (n < 0 || n + 1 > 128) throw InvalidArgument("hermite: n out of range");
        const double h0 = kernel::hermite(n + 1, 0.0);
        s.eval = [n, h0](double x) { return (kernel::hermite(n + 1, x) - h0) / (2.0 * (n + 1)); };
        s.growth = WeightedGrowth{kInf};
        s.density = [n](double x) { return kernel::hermite(n, x); };
    } else if (name == "non-lp") {
        const double sv = positive(required(p, "s", name), name, "s");
        const int terms = integer_param(param(p, "N", 8), name, "N");
        const double t0 = positive(param(p, "t0", 0.1), name, "t0");
        if (terms < 1) throw InvalidArgument("non-lp: N must be >= 1");
        std::vector<double> amp;
        std::vector<double> centers;
        double total = 0.0;
        for (int n = 1; n <= terms; ++n) {
            const double a = (n % 2 == 0 ? 1.0 : -1.0) / std::log(n + 1.0);
            amp.push_back(a);
            centers.push_back(2.0 * n * n * std::sqrt(sv + t0));
            total += a;
        }
        s.eval = [sv, amp, centers](double x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < amp.size(); ++i) acc += amp[i] * gauss_cdf(sv, x - centers[i]);
            return acc;
        };
        s.density = [sv, amp, centers](double x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < amp.size(); ++i) acc += amp[i] * kernel::theta(sv, x - centers[i]);
            return acc;
        };
        s.limit_neg = 0.0;
        s.limit_pos = total;
        const double r = realline::truncation_radius(1.0 / (4.0 * sv), 1e-16);
        s.density_decay = DecayHint::compact(centers.front() - r, centers.back() + r);
        s.breakpoints = centers;
    } else {
        throw InvalidArgument("unknown closed-form primitive '" + name + "'");
    }
    return Primitive(std::move(s));
}

std::vector<std::string> closed_form_names() {
    return {"zero", "gauss", "gauss-cdf", "step-ramp", "ramp", "cantor", "weierstrass-damped",
            "alg-sing", "fresnel-cos", "fresnel-sin", "neg-gauss", "sin", "poly", "hermite", "non-lp"};
}

Primitive from_samples(const std::vector<std::pair<double, double>>& points, double limit_neg,
                       double limit_pos, double tol) {
    if (points.size() < 2) throw InvalidArgument("from_samples needs at least two samples");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
            throw InvalidArgument("from_samples: non-finite sample");
        }
        if (i > 0 && !(points[i].first > points[i - 1].first)) {
            throw InvalidArgument("from_samples: abscissae must be strictly increasing");
        }
    }
    if (std::abs(points.front().second - limit_neg) > tol) {
        throw InvalidArgument("from_samples: first sample disagrees with the limit at -infinity");
    }
    if (std::abs(points.back().second - limit_pos) > tol) {
        throw InvalidArgument("from_samples: last sample disagrees with the limit at +infinity");
    }
    auto xs = std::make_shared<std::vector<double>>();
    auto vs = std::make_shared<std::vector<double>>();
    double variation = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        xs->push_back(points[i].first);
        vs->push_back(points[i].second);
        if (i > 0) variation += std::abs(points[i].second - points[i - 1].second);
    }
    Primitive::Spec s;
    s.name = "samples";
    s.eval = [xs, vs, limit_neg, limit_pos](double x) {
        if (x <= xs->front()) return limit_neg;
        if (x >= xs->back()) return limit_pos;
        const auto it = std::upper_bound(xs->begin(), xs->end(), x);
        const std::size_t j = static_cast<std::size_t>(it - xs->begin());
        const double x0 = (*xs)[j - 1];
        const double x1 = (*xs)[j];
        const double w = (x - x0) / (x1 - x0);
        return (*vs)[j - 1] + w * ((*vs)[j] - (*vs)[j - 1]);
    };
    s.density = [xs, vs](double x) {
        if (x <= xs->front() || x >= xs->back()) return 0.0;
        const auto it = std::upper_bound(xs->begin(), xs->end(), x);
        const std::size_t j = static_cast<std::size_t>(it - xs->begin());
        return ((*vs)[j] - (*vs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
    };
    s.limit_neg = limit_neg;
    s.limit_pos = limit_pos;
    s.variation = variation;
    s.density_decay = realline::DecayHint::compact(xs->front(), xs->back());
    if (limit_neg == 0.0) s.support = std::make_pair(xs->front(), xs->back());
    if (xs->size() <= 256) s.breakpoints = *xs;
    return Primitive(std::move(s));
}

std::vector<std::pair<double, double>> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open sample file '" + path + "'");
    std::vector<std::pair<double, double>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'x,value'");
        }
        const std::string a = line.substr(0, comma);
        const std::string b = line.substr(comma + 1);
        char* end_a = nullptr;
        char* end_b = nullptr;
        const double x = std::strtod(a.c_str(), &end_a);
        const double v = std::strtod(b.c_str(), &end_b);
        const bool ok = end_a != a.c_str() && end_b != b.c_str();
        if (!ok) {
            if (lineno == 1 && out.empty()) continue;  // header
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": unparsable sample");
        }
        out.emplace_back(x, v);
    }
    return out;
}

Primitive accumulate(const RealFn& density, const realline::DecayHint& hint, double tol) {
    const auto [lo, hi] = realline::effective_window(density, hint, tol);
    constexpr std::size_t kPanels = 64;
    auto nodes = std::make_shared<std::vector<double>>(kPanels + 1);
    auto cumulative = std::make_shared<std::vector<double>>(kPanels + 1, 0.0);
    for (std::size_t i = 0; i <= kPanels; ++i) {
        (*nodes)[i] = lo + (hi - lo) * static_cast<double>(i) / kPanels;
    }
    for (std::size_t i = 0; i < kPanels; ++i) {
        const auto q = realline::integrate_interval(density, (*nodes)[i], (*nodes)[i + 1], tol);
        (*cumulative)[i + 1] = (*cumulative)[i] + q.value;
    }
    const double total = cumulative->back();
    Primitive::Spec s;
    s.name = "accumulated";
    s.eval = [density, nodes, cumulative, tol](double x) {
        if (x <= nodes->front()) return 0.0;
        if (x >= nodes->back()) return cumulative->back();
        const auto it = std::upper_bound(nodes->begin(), nodes->end(), x);
        const std::size_t j = static_cast<std::size_t>(it - nodes->begin()) - 1;
        return (*cumulative)[j] + realline::integrate_interval(density, (*nodes)[j], x, tol).value;
    };
    s.limit_neg = 0.0;
    s.limit_pos = total;
    s.density = density;
    s.density_decay = hint;
    if (const auto* c = std::get_if<realline::CompactDecay>(&hint.kind())) {
        s.support = std::make_pair(c->a, c->b);
        s.breakpoints = {c->a, c->b};
    }
    return Primitive(std::move(s));
}

}  // namespace primitives
}  // namespace heatdist
