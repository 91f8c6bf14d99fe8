#pragma once

#include "ordest/estimators.hpp"
#include "ordest/model.hpp"
#include "ordest/montecarlo.hpp"
#include "ordest/numerics.hpp"

#include <cstdint>
#include <functional>

namespace ordest {

/// Truncation interval [l(w), u(w)] for the multiplier of T. For mu2 the
/// upper end is numerics::kInfinity.
struct PitmanBounds {
    double lower = 0.0;
    double upper = 0.0;
    Target target = Target::Mu1;
};

/// (2^{1/(n1+n2-2)} - 1) / rate of the target population.
double median_factor(Target target, const Design& design);

/// Median of (X_min - mu) / T given the ancillary w (W for mu1, W* for mu2):
/// median_factor * (1 + eta w) for mu1, median_factor * (1 + w / eta) for mu2.
double conditional_median(Target target, const Design& design, double eta, double w);
inline double conditional_median(Target target, int n1, int n2, double eta, double w) {
    return conditional_median(target, Design::complete(n1, n2), eta, w);
}

/// Conditional density of (X_min - mu) / T at x given the ancillary.
double conditional_density(Target target, const Design& design, double eta, double w, double x);

PitmanBounds pitman_bounds(Target target, const Design& design, double w);
inline PitmanBounds pitman_bounds(Target target, int n1, int n2, double w) {
    return pitman_bounds(target, Design::complete(n1, n2), w);
}

/// Median multiplier of the Pitman-nearest equivariant estimator,
/// (2^{1/(n-1)} - 1) / rate.
double pnaee_constant(const PopulationDesign& pop);
inline double pnaee_constant(int n) {
    return pnaee_constant(PopulationDesign{n, static_cast<double>(n)});
}

/// max{lower, min{psi, upper}}.
double pitman_clamp(const PitmanBounds& bounds, double psi);

/// x_min - psi*(w) t with psi* the clamp of base_phi(w), w = W (mu1) or W* (mu2).
Estimate pitman_improved(Target target, const SufficientStats& stats,
                         const std::function<double(double)>& base_phi);

using EstimatorFn = std::function<double(const SufficientStats&)>;

/// An estimator of `target` as a plain function of the stats.
EstimatorFn make_estimator(EstimatorKind kind, Target target, const LossSpec& loss,
                           const Design& design);

struct GpnResult {
    double gpn = 0.0;
    double std_error = 0.0;
    int reps = 0;
    /// 2 * wins + ties; gpn = score / (2 reps).
    std::int64_t score = 0;
};

/// P[L_a < L_b] + P[L_a = L_b] / 2 for the scaled losses of est_a and est_b
/// on config.target, over config.reps paired replications of config's design.
/// Losses within 1e-12 of each other count as ties.
GpnResult gpn_mc(const EstimatorFn& est_a, const EstimatorFn& est_b, const SimConfig& config);

}  // namespace ordest
