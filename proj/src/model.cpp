#include "ordest/model.hpp"

#include "ordest/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ordest {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::SampleTooSmall: return "SampleTooSmall";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::LinexShapeViolation: return "LinexShapeViolation";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::QuadratureNoConverge: return "QuadratureNoConverge";
        case ErrorCode::UnsupportedKind: return "UnsupportedKind";
        case ErrorCode::InvalidCensoringPlan: return "InvalidCensoringPlan";
        case ErrorCode::NotRecordSequence: return "NotRecordSequence";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string_view to_string(Target target) noexcept {
    return target == Target::Mu1 ? "mu1" : "mu2";
}

Target parse_target(std::string_view text) {
    if (text == "mu1" || text == "1") return Target::Mu1;
    if (text == "mu2" || text == "2") return Target::Mu2;
    throw Error(ErrorCode::InvalidArgument, "unknown target '" + std::string(text) + "'");
}

void PopulationParams::validate() const {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "scale parameters must be positive");
    }
    if (order_restricted && sigma1 > sigma2) {
        throw Error(ErrorCode::InvalidArgument, "order restriction sigma1 <= sigma2 violated");
    }
}

void Design::validate() const {
    for (const auto* pop : {&pop1, &pop2}) {
        if (pop->n < 2) {
            throw Error(ErrorCode::SampleTooSmall, "effective sample size must be at least 2");
        }
        if (!(pop->rate > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "exponential rate must be positive");
        }
    }
}

void SufficientStats::validate() const {
    if (n1 < 2 || n2 < 2) {
        throw Error(ErrorCode::SampleTooSmall, "n1 and n2 must be at least 2");
    }
    if (!(t1 > 0.0) || !(t2 > 0.0)) {
        throw Error(ErrorCode::DegenerateSample, "T1 and T2 must be strictly positive");
    }
}

namespace {

void reduce_one(std::span<const double> sample, double& x_min, double& t, int& n) {
    if (sample.size() < 2) {
        throw Error(ErrorCode::SampleTooSmall, "each sample needs at least 2 observations");
    }
    x_min = *std::min_element(sample.begin(), sample.end());
    const double m = x_min;
    t = std::accumulate(sample.begin(), sample.end(), 0.0,
                        [m](double acc, double x) { return acc + (x - m); });
    n = static_cast<int>(sample.size());
    if (!(t > 0.0)) {
        throw Error(ErrorCode::DegenerateSample, "all observations equal: T = 0");
    }
}

}  // namespace

SufficientStats reduce_complete(std::span<const double> sample1, std::span<const double> sample2) {
    SufficientStats s;
    reduce_one(sample1, s.x1_min, s.t1, s.n1);
    reduce_one(sample2, s.x2_min, s.t2, s.n2);
    return s;
}

Ancillaries ancillaries(const SufficientStats& stats) {
    if (!(stats.t1 > 0.0) || !(stats.t2 > 0.0)) {
        throw Error(ErrorCode::DegenerateSample, "ancillaries need T1 > 0 and T2 > 0");
    }
    return {stats.t2 / stats.t1, stats.t1 / stats.t2, stats.x2_min / stats.t1,
            stats.x1_min / stats.t2};
}

}  // namespace ordest
