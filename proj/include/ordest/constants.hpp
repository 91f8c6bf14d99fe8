#pragma once

#include "ordest/loss.hpp"
#include "ordest/model.hpp"
#include "ordest/numerics.hpp"

#include <string_view>

namespace ordest {

/// Solved multipliers for one (loss, design). For a complete sample design
/// under squared error: c0i = 1/n_i^2, b0i = 1/(n_i (n1+n2-1)),
/// b0i* = 1/(n_i (n1+n2)), umvue_i = 1/(n_i (n_i-1)).
struct EquivariantConstants {
    double c01 = 0.0, c02 = 0.0;
    double b01 = 0.0, b02 = 0.0;
    double b01_star = 0.0, b02_star = 0.0;
    double umvue1 = 0.0, umvue2 = 0.0;
    Design design;

    double baee(Target t) const noexcept { return t == Target::Mu1 ? c01 : c02; }
    double tail(Target t) const noexcept { return t == Target::Mu1 ? b01 : b02; }
    double tail_star(Target t) const noexcept { return t == Target::Mu1 ? b01_star : b02_star; }
    double umvue(Target t) const noexcept { return t == Target::Mu1 ? umvue1 : umvue2; }
};

/// Root c of E[L'(U - cV) V] = 0, U ~ Exp(rate), V ~ Gamma(n - 1, 1).
/// Closed forms are used for squared error and linex.
double baee_constant(const LossSpec& loss, const PopulationDesign& pop);
inline double baee_constant(const LossSpec& loss, int n) {
    return baee_constant(loss, PopulationDesign{n, static_cast<double>(n)});
}

/// Root b of E[L'(U - bZ)] = 0, U ~ Exp(rate), Z ~ Gamma(gamma_shape, 1).
double tail_constant(const LossSpec& loss, const PopulationDesign& pop, double gamma_shape);
inline double tail_constant(const LossSpec& loss, int n_own, int gamma_shape) {
    return tail_constant(loss, PopulationDesign{n_own, static_cast<double>(n_own)}, gamma_shape);
}

/// Always solve by quadrature + root finding, ignoring closed forms.
double baee_constant_numeric(const LossSpec& loss, const PopulationDesign& pop,
                             const numerics::QuadSettings& settings = {});
double tail_constant_numeric(const LossSpec& loss, const PopulationDesign& pop,
                             double gamma_shape, const numerics::QuadSettings& settings = {});

/// Unbiased multiplier 1/(rate (n-1)); 1/(n(n-1)) for complete samples.
double umvue_constant(const PopulationDesign& pop);

/// All constants for a design, memoised per (loss, design). The cache is
/// safe for concurrent use.
EquivariantConstants solve_constants(const LossSpec& loss, const Design& design);
inline EquivariantConstants solve_constants(const LossSpec& loss, int n1, int n2) {
    return solve_constants(loss, Design::complete(n1, n2));
}

enum class DominanceCase { Mu1Stein, Mu1Star, Mu2Stein, Mu2Star };

std::string_view to_string(DominanceCase which) noexcept;

struct DominanceResult {
    bool holds = false;
    /// E[L'(U_i - b V_i) V_i] with V_i ~ Gamma(n_i - 1, 1) and b the tail
    /// constant of the case; the condition is >= 0 for mu1, <= 0 for mu2.
    double value = 0.0;
};

DominanceResult dominance_check(const LossSpec& loss, const Design& design, DominanceCase which,
                                const numerics::QuadSettings& settings = {});
inline DominanceResult dominance_check(const LossSpec& loss, int n1, int n2, DominanceCase which) {
    return dominance_check(loss, Design::complete(n1, n2), which);
}

}  // namespace ordest
