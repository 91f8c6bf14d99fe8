#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace ordest::numerics {

struct QuadSettings {
    int node_count = 64;        // Gauss-Laguerre nodes per axis
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 400; // adaptive fallback budget

    void validate() const;
};

/// Nodes and weights of a Gauss rule. For Laguerre rules the weights are
/// normalised to sum to one, so that sum w_i f(x_i) approximates E[f(V)]
/// with V ~ Gamma(alpha + 1, 1).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Generalised Gauss-Laguerre rule for weight x^alpha e^{-x} (Golub-Welsch).
/// Rules are memoised; the returned reference stays valid for the process.
const GaussRule& gauss_laguerre(int n, double alpha);

/// Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

/// Adaptive Gauss-Kronrod (7/15) on a finite interval. Stops when the
/// summed error estimate is below max(abs_tol, rel_tol * |I|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_subdivisions);

/// Adaptive integration over [0, inf) via x = t / (1 - t).
double integrate_half_line(const std::function<double(double)>& f, double abs_tol,
                           double rel_tol, int max_subdivisions);

/// E[g(U, V)] with U ~ Exp(rate exp_rate) and V ~ Gamma(gamma_shape, 1)
/// independent. Tensor Gauss-Laguerre first; if halving the node count
/// changes the answer beyond tolerance, falls back to nested adaptive
/// quadrature and throws QuadratureNoConverge when that budget runs out.
double expect_exp_gamma(const std::function<double(double, double)>& integrand,
                        double exp_rate, double gamma_shape,
                        const QuadSettings& settings = {});

/// E[g(V)] for V ~ Gamma(gamma_shape, 1), same strategy as above.
double expect_gamma(const std::function<double(double)>& integrand, double gamma_shape,
                    const QuadSettings& settings = {});

/// Root of a function with a sign change on [lo, hi] by bisection with
/// secant (Illinois) steps. Returns once |f(c)| <= tol or the bracket is
/// narrower than tol. Throws NoSignChange if f(lo), f(hi) share a sign.
double solve_root_monotone(const std::function<double(double)>& f, double lo, double hi,
                           double tol);

/// Like solve_root_monotone, but first widens [lo, hi] geometrically
/// (hi *= 2, up to `max_widen` times) until the sign changes.
double solve_root_widening(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int max_widen = 60);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A(z) = int_0^z x^power_num (1 + x)^(-power_den) dx. z = kInfinity gives
/// the complete beta value B(power_num + 1, power_den - power_num - 1).
double bz_beta_integral(double power_num, double power_den, double z,
                        const QuadSettings& settings = {});

/// The complementary piece int_z^inf x^power_num (1 + x)^(-power_den) dx,
/// accurate in relative terms however small it gets.
double bz_beta_tail(double power_num, double power_den, double z,
                    const QuadSettings& settings = {});

/// log B(a, b).
double log_beta(double a, double b);

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson).
class MonotoneInterpolator {
public:
    MonotoneInterpolator() = default;
    MonotoneInterpolator(std::vector<double> x, std::vector<double> y);

    /// Clamps to the end values outside [x.front(), x.back()].
    double operator()(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, slope_;
};

}  // namespace ordest::numerics
