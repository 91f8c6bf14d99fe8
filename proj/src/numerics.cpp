#include "ordest/numerics.hpp"

#include "ordest/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <string>
#include <utility>

namespace ordest::numerics {

void QuadSettings::validate() const {
    if (node_count < 16) {
        throw Error(ErrorCode::InvalidArgument, "node_count must be at least 16");
    }
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be positive");
    }
}

namespace {

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                       double mass) {
    const auto n = diag.size();
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        jacobi(i, i) = diag(i);
        if (i + 1 < n) {
            jacobi(i, i + 1) = offdiag(i);
            jacobi(i + 1, i) = offdiag(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        rule.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
    }
    return rule;
}

std::mutex rule_mutex;
std::map<std::pair<int, double>, std::unique_ptr<GaussRule>> laguerre_rules;
std::map<int, std::unique_ptr<GaussRule>> legendre_rules;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
    }
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::QuadratureNoConverge, "non-finite integrand value");
    }
    return {a, b, value, error};
}

// L_n^alpha(x) and its derivative by the three-term recurrence.
std::pair<double, double> laguerre_eval(int n, double alpha, double x) {
    double prev = 1.0, cur = 1.0 + alpha - x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return {cur, (n * cur - (n + alpha) * prev) / x};
}

// Eigenvector weights only carry absolute accuracy, which is useless for
// the far nodes. Newton-polish each node, then use the closed-form weight.
void polish_laguerre(GaussRule& rule, int n, double alpha) {
    const double log_scale = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                             std::lgamma(alpha + 1.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double x = rule.nodes[i];
        for (int it = 0; it < 8; ++it) {
            const auto [p, dp] = laguerre_eval(n, alpha, x);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) <= 1e-15 * x) break;
        }
        const double dp = laguerre_eval(n, alpha, x).second;
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(log_scale - std::log(x) - 2.0 * std::log(std::abs(dp)));
    }
}

}  // namespace

const GaussRule& gauss_laguerre(int n, double alpha) {
    if (n < 1 || !(alpha > -1.0)) {
        throw Error(ErrorCode::InvalidArgument, "invalid Gauss-Laguerre parameters");
    }
    std::lock_guard lock(rule_mutex);
    auto& slot = laguerre_rules[{n, alpha}];
    if (!slot) {
        Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
        for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
        for (int i = 1; i < n; ++i) off(i - 1) = std::sqrt(i * (i + alpha));
        slot = std::make_unique<GaussRule>(golub_welsch(diag, off, 1.0));
        polish_laguerre(*slot, n, alpha);
    }
    return *slot;
}

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "invalid Gauss-Legendre order");
    std::lock_guard lock(rule_mutex);
    auto& slot = legendre_rules[n];
    if (!slot) {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max(n - 1, 0));
        for (int i = 1; i < n; ++i) off(i - 1) = i / std::sqrt(4.0 * i * i - 1.0);
        slot = std::make_unique<GaussRule>(golub_welsch(diag, off, 2.0));
    }
    return *slot;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol, int max_subdivisions) {
    if (a == b) return 0.0;
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int segments = 1;
    while (total_error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (segments >= max_subdivisions) {
            throw Error(ErrorCode::QuadratureNoConverge,
                        "adaptive quadrature exhausted " + std::to_string(max_subdivisions) +
                            " subdivisions");
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // Re-sum to shed accumulated cancellation in the running total.
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

double integrate_half_line(const std::function<double(double)>& f, double abs_tol,
                           double rel_tol, int max_subdivisions) {
    auto mapped = [&f](double t) {
        const double s = 1.0 - t;
        const double x = t / s;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (s * s);
    };
    return integrate(mapped, 0.0, 1.0, abs_tol, rel_tol, max_subdivisions);
}

namespace {

double tensor_rule(const std::function<double(double, double)>& g, double rate, double shape,
                   int n) {
    const GaussRule& ru = gauss_laguerre(n, 0.0);
    const GaussRule& rv = gauss_laguerre(n, shape - 1.0);
    double total = 0.0;
    for (std::size_t j = 0; j < rv.nodes.size(); ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < ru.nodes.size(); ++i) {
            inner += ru.weights[i] * g(ru.nodes[i] / rate, rv.nodes[j]);
        }
        total += rv.weights[j] * inner;
    }
    return total;
}

double gamma_density(double v, double shape, double log_norm) {
    if (v <= 0.0) return 0.0;
    return std::exp((shape - 1.0) * std::log(v) - v - log_norm);
}

bool agrees(double fine, double coarse, const QuadSettings& s) {
    return std::abs(fine - coarse) <= std::max(s.abs_tol, s.rel_tol * std::abs(fine));
}

}  // namespace

double expect_exp_gamma(const std::function<double(double, double)>& integrand, double exp_rate,
                        double gamma_shape, const QuadSettings& settings) {
    settings.validate();
    if (!(exp_rate > 0.0) || !(gamma_shape > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "exp_rate and gamma_shape must be positive");
    }
    const double fine = tensor_rule(integrand, exp_rate, gamma_shape, settings.node_count);
    const double coarse = tensor_rule(integrand, exp_rate, gamma_shape, settings.node_count / 2);
    if (std::isfinite(fine) && agrees(fine, coarse, settings)) return fine;

    const double log_norm = std::lgamma(gamma_shape);
    const double inner_tol = 0.1 * settings.abs_tol;
    auto outer = [&](double v) {
        const double dens = gamma_density(v, gamma_shape, log_norm);
        if (dens == 0.0) return 0.0;
        auto in = [&](double u) { return exp_rate * std::exp(-exp_rate * u) * integrand(u, v); };
        return dens * integrate_half_line(in, inner_tol, settings.rel_tol,
                                          settings.max_subdivisions);
    };
    return integrate_half_line(outer, settings.abs_tol, settings.rel_tol,
                               settings.max_subdivisions);
}

double expect_gamma(const std::function<double(double)>& integrand, double gamma_shape,
                    const QuadSettings& settings) {
    settings.validate();
    if (!(gamma_shape > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gamma_shape must be positive");
    }
    auto rule_sum = [&](int n) {
        const GaussRule& r = gauss_laguerre(n, gamma_shape - 1.0);
        double total = 0.0;
        for (std::size_t j = 0; j < r.nodes.size(); ++j) total += r.weights[j] * integrand(r.nodes[j]);
        return total;
    };
    const double fine = rule_sum(settings.node_count);
    const double coarse = rule_sum(settings.node_count / 2);
    if (std::isfinite(fine) && agrees(fine, coarse, settings)) return fine;
    const double log_norm = std::lgamma(gamma_shape);
    return integrate_half_line(
        [&](double v) {
            const double d = gamma_density(v, gamma_shape, log_norm);
            return d == 0.0 ? 0.0 : d * integrand(v);
        },
        settings.abs_tol, settings.rel_tol, settings.max_subdivisions);
}

double solve_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                           double tol) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "root bracket must satisfy lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi)) {
        throw Error(ErrorCode::NoSignChange, "bracket does not straddle a root");
    }
    // Brent: inverse quadratic / secant steps guarded by bisection.
    double a = lo, fa = flo, b = hi, fb = fhi;
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 400; ++iter) {
        if (std::signbit(fb) == std::signbit(fc)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double eps_tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                               0.5 * tol;
        const double half = 0.5 * (c - b);
        if (std::abs(fb) <= tol || std::abs(half) <= eps_tol || fb == 0.0) return b;
        if (std::abs(e) >= eps_tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * half * q - std::abs(eps_tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > eps_tol ? d : (half > 0 ? eps_tol : -eps_tol);
        fb = f(b);
    }
    return b;
}

double solve_root_widening(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int max_widen) {
    const double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < max_widen && std::signbit(flo) == std::signbit(fhi) && flo != 0.0 &&
                    fhi != 0.0;
         ++i) {
        lo = hi;
        hi *= 2.0;
        fhi = f(hi);
    }
    return solve_root_monotone(f, lo, hi, tol);
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double bz_beta_integral(double power_num, double power_den, double z, const QuadSettings& settings) {
    if (power_num < 0.0 || !(z > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "bz_beta_integral needs power_num >= 0 and z > 0");
    }
    const double tail_power = power_den - power_num - 2.0;
    if (std::isinf(z)) {
        if (!(power_den > power_num + 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "complete integral diverges");
        }
        return std::exp(log_beta(power_num + 1.0, power_den - power_num - 1.0));
    }
    // x = t / (1 - t) maps [0, z] to [0, z / (1 + z)] with a polynomial-like
    // integrand. Past the midpoint, subtract the tail from the complete value
    // instead: rounding then keeps A(z) monotone where it saturates.
    if (z > 1.0 && power_den > power_num + 1.0) {
        const double complete = std::exp(log_beta(power_num + 1.0, tail_power + 1.0));
        return complete - bz_beta_tail(power_num, power_den, z, settings);
    }
    const double upper = z / (1.0 + z);
    auto integrand = [=](double t) {
        const double head = power_num == 0.0 ? 1.0 : std::pow(t, power_num);
        return head * std::pow(1.0 - t, tail_power);
    };
    return integrate(integrand, 0.0, upper, 0.0, std::min(settings.rel_tol, 1e-12),
                     settings.max_subdivisions);
}

double bz_beta_tail(double power_num, double power_den, double z, const QuadSettings& settings) {
    if (power_num < 0.0 || !(z > 0.0) || !(power_den > power_num + 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "bz_beta_tail needs a convergent integral");
    }
    if (std::isinf(z)) return 0.0;
    // s = 1 / (1 + x) maps [z, inf) to [0, 1 / (1 + z)].
    const double upper = 1.0 / (1.0 + z);
    const double lead = power_den - power_num - 2.0;
    auto integrand = [=](double s) {
        const double head = lead == 0.0 ? 1.0 : std::pow(s, lead);
        return power_num == 0.0 ? head : head * std::pow(1.0 - s, power_num);
    };
    return integrate(integrand, 0.0, upper, 0.0, std::min(settings.rel_tol, 1e-12),
                     settings.max_subdivisions);
}

MonotoneInterpolator::MonotoneInterpolator(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "interpolator needs >= 2 matching points");
    }
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be strictly increasing");
        delta[i] = (y_[i + 1] - y_[i]) / h;
    }
    slope_.assign(n, 0.0);
    slope_[0] = delta[0];
    slope_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // Weighted harmonic mean (Fritsch-Butland), keeps monotonicity.
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            const double w1 = 2.0 * h1 + h0;
            const double w2 = h1 + 2.0 * h0;
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

double MonotoneInterpolator::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * slope_[i + 1];
}

}  // namespace ordest::numerics
