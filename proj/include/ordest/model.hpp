#pragma once

#include <span>
#include <string_view>

namespace ordest {

enum class Target { Mu1, Mu2 };

std::string_view to_string(Target target) noexcept;
Target parse_target(std::string_view text);

/// Parameters of the two exponential populations Exp(mu_i, sigma_i).
struct PopulationParams {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    bool order_restricted = true;

    /// sigma1 / sigma2; lies in (0, 1] when the restriction holds.
    double eta() const noexcept { return sigma1 / sigma2; }
    void validate() const;
};

/// Shape/rate description of one population's reduced statistics.
///
/// `n` is the shape parameter: T ~ Gamma(n - 1, sigma). `rate` is the
/// exponential rate of the minimum: (X_min - mu) / sigma ~ Exp(rate).
/// For complete samples both equal the sample size.
struct PopulationDesign {
    int n = 2;
    double rate = 2.0;

    friend bool operator==(const PopulationDesign&, const PopulationDesign&) = default;
};

struct Design {
    PopulationDesign pop1;
    PopulationDesign pop2;

    static Design complete(int n1, int n2) {
        return {{n1, static_cast<double>(n1)}, {n2, static_cast<double>(n2)}};
    }
    const PopulationDesign& of(Target target) const noexcept {
        return target == Target::Mu1 ? pop1 : pop2;
    }
    const PopulationDesign& other(Target target) const noexcept {
        return target == Target::Mu1 ? pop2 : pop1;
    }
    void validate() const;

    friend bool operator==(const Design&, const Design&) = default;
};

/// The reduced data (X1(1), X2(1), T1, T2) plus the design it came from.
struct SufficientStats {
    double x1_min = 0.0;
    double x2_min = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    int n1 = 2;
    int n2 = 2;
    // Exponential rate of each minimum; 0 means "same as n_i" (complete samples).
    double rate1 = 0.0;
    double rate2 = 0.0;

    double exp_rate1() const noexcept { return rate1 > 0.0 ? rate1 : n1; }
    double exp_rate2() const noexcept { return rate2 > 0.0 ? rate2 : n2; }
    Design design() const noexcept { return {{n1, exp_rate1()}, {n2, exp_rate2()}}; }

    double x_min(Target target) const noexcept { return target == Target::Mu1 ? x1_min : x2_min; }
    double t(Target target) const noexcept { return target == Target::Mu1 ? t1 : t2; }

    /// Throws SampleTooSmall / DegenerateSample when an estimator cannot use these stats.
    void validate() const;
};

/// Ancillary ratios used by the improved estimators.
struct Ancillaries {
    double w = 0.0;       // T2 / T1
    double w_star = 0.0;  // T1 / T2
    double w1 = 0.0;      // X2(1) / T1
    double w2 = 0.0;      // X1(1) / T2
};

SufficientStats reduce_complete(std::span<const double> sample1, std::span<const double> sample2);

Ancillaries ancillaries(const SufficientStats& stats);

}  // namespace ordest
