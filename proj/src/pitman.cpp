#include "ordest/pitman.hpp"

#include "ordest/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ordest {

namespace {

void check_eta_w(double eta, double w) {
    if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must be in (0, 1]");
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "w must be non-negative");
}

constexpr double kTieTol = 1e-12;

}  // namespace

double median_factor(Target target, const Design& design) {
    design.validate();
    const int shape = design.pop1.n + design.pop2.n - 2;
    return std::expm1(std::log(2.0) / shape) / design.of(target).rate;
}

double conditional_median(Target target, const Design& design, double eta, double w) {
    check_eta_w(eta, w);
    const double f = median_factor(target, design);
    return target == Target::Mu1 ? f * (1.0 + eta * w) : f * (1.0 + w / eta);
}

double conditional_density(Target target, const Design& design, double eta, double w, double x) {
    check_eta_w(eta, w);
    design.validate();
    if (x < 0.0) return 0.0;
    // Given the ancillary, T ~ Gamma(n1+n2-2) with a rescaled rate, so
    // P[(X_min - mu)/T > x] = (1 + rate x / s)^{-(n1+n2-2)}.
    const double s = target == Target::Mu1 ? 1.0 + eta * w : 1.0 + w / eta;
    const double rate = design.of(target).rate;
    const double k = design.pop1.n + design.pop2.n - 2.0;
    return k * rate / s * std::pow(1.0 + rate * x / s, -(k + 1.0));
}

PitmanBounds pitman_bounds(Target target, const Design& design, double w) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "w must be non-negative");
    const double f = median_factor(target, design);
    if (target == Target::Mu1) return {f, f * (1.0 + w), target};
    return {f * (1.0 + w), numerics::kInfinity, target};
}

double pnaee_constant(const PopulationDesign& pop) {
    if (pop.n < 2) throw Error(ErrorCode::SampleTooSmall, "n must be at least 2");
    return std::expm1(std::log(2.0) / (pop.n - 1)) / pop.rate;
}

double pitman_clamp(const PitmanBounds& bounds, double psi) {
    return std::max(bounds.lower, std::min(psi, bounds.upper));
}

Estimate pitman_improved(Target target, const SufficientStats& stats,
                         const std::function<double(double)>& base_phi) {
    const Ancillaries anc = ancillaries(stats);
    const double w = target == Target::Mu1 ? anc.w : anc.w_star;
    const double phi = pitman_clamp(pitman_bounds(target, stats.design(), w), base_phi(w));
    return {stats.x_min(target) - phi * stats.t(target), EstimatorKind::PitmanImproved, target,
            phi};
}

EstimatorFn make_estimator(EstimatorKind kind, Target target, const LossSpec& loss,
                           const Design& design) {
    auto prepared = std::make_shared<const PreparedEstimator>(target, kind, loss, design);
    return [prepared](const SufficientStats& s) { return (*prepared)(s).value; };
}

GpnResult gpn_mc(const EstimatorFn& est_a, const EstimatorFn& est_b, const SimConfig& config) {
    config.params().validate();
    validate_scheme(config.scheme_of(Target::Mu1));
    validate_scheme(config.scheme_of(Target::Mu2));
    if (config.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be positive");
    const int reps = config.reps;
    const double mu = config.target == Target::Mu1 ? config.mu1 : config.mu2;
    const double sigma = config.target == Target::Mu1 ? config.sigma1 : config.sigma2;
    std::vector<double> score(static_cast<std::size_t>(reps));

    for_each_replication(reps, config.workers, [&](int r) {
        const SufficientStats s = draw_replication(config, static_cast<std::uint64_t>(r));
        const double la = config.loss.value((est_a(s) - mu) / sigma);
        const double lb = config.loss.value((est_b(s) - mu) / sigma);
        double v = 0.0;
        if (std::abs(la - lb) <= kTieTol) {
            v = 1.0;
        } else if (la < lb) {
            v = 2.0;
        }
        score[static_cast<std::size_t>(r)] = v;
    });

    GpnResult res;
    res.reps = reps;
    for (double v : score) res.score += static_cast<std::int64_t>(v);
    res.gpn = static_cast<double>(res.score) / (2.0 * reps);
    // Per-replication outcome is score / 2 in {0, 1/2, 1}.
    double ss = 0.0;
    for (double v : score) {
        const double d = 0.5 * v - res.gpn;
        ss += d * d;
    }
    res.std_error = reps > 1 ? std::sqrt(ss / (reps - 1.0) / reps) : 0.0;
    return res;
}

}  // namespace ordest
