#include "ordest/estimators.hpp"

#include "ordest/error.hpp"
#include "ordest/pitman.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

namespace ordest {

namespace {

struct KindName {
    EstimatorKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 12> kKindNames{{
    {EstimatorKind::MLE, "MLE"},
    {EstimatorKind::UMVUE, "UMVUE"},
    {EstimatorKind::BAEE, "BAEE"},
    {EstimatorKind::Stein, "Stein"},
    {EstimatorKind::SteinStar, "SteinStar"},
    {EstimatorKind::ImprovedUMVUE, "ImprovedUMVUE"},
    {EstimatorKind::ImprovedUMVUEStar, "ImprovedUMVUEStar"},
    {EstimatorKind::ImprovedMLE, "ImprovedMLE"},
    {EstimatorKind::ImprovedMLEStar, "ImprovedMLEStar"},
    {EstimatorKind::BrewsterZidek, "BrewsterZidek"},
    {EstimatorKind::PitmanPNAEE, "PitmanPNAEE"},
    {EstimatorKind::PitmanImproved, "PitmanImproved"},
}};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

bool uses_ratio(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::MLE:
        case EstimatorKind::UMVUE:
        case EstimatorKind::BAEE:
        case EstimatorKind::PitmanPNAEE: return false;
        default: return true;
    }
}

}  // namespace

std::string_view to_string(EstimatorKind kind) noexcept {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) return kn.name;
    }
    return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view text) {
    for (const auto& kn : kKindNames) {
        if (iequals(kn.name, text)) return kn.kind;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown estimator '" + std::string(text) + "'");
}

const std::vector<EstimatorKind>& all_estimator_kinds() {
    static const std::vector<EstimatorKind> kinds = [] {
        std::vector<EstimatorKind> v;
        for (const auto& kn : kKindNames) v.push_back(kn.kind);
        return v;
    }();
    return kinds;
}

PreparedEstimator::PreparedEstimator(Target target, EstimatorKind kind, const LossSpec& loss,
                                     const Design& design)
    : target_(target), kind_(kind) {
    if (target == Target::Mu1 &&
        (kind == EstimatorKind::ImprovedMLE || kind == EstimatorKind::ImprovedMLEStar)) {
        throw Error(ErrorCode::UnsupportedKind,
                    std::string(to_string(kind)) + " is only defined for mu2");
    }
    constants_ = solve_constants(loss, design);
    pnaee_ = pnaee_constant(design.of(target));
    median_factor_ = median_factor(target, design);
    if (kind == EstimatorKind::BrewsterZidek) bz_ = bz_table(target, design, loss);
}

double PreparedEstimator::multiplier(const SufficientStats& stats) const {
    const EquivariantConstants& k = constants_;
    const double t_own = stats.t(target_);
    if (stats.n1 < 2 || stats.n2 < 2) {
        throw Error(ErrorCode::SampleTooSmall, "n1 and n2 must be at least 2");
    }
    if (!(t_own > 0.0) || (uses_ratio(kind_) && !(stats.t1 > 0.0 && stats.t2 > 0.0))) {
        throw Error(ErrorCode::DegenerateSample, "T must be strictly positive");
    }
    const double c0 = k.baee(target_);
    const double b0 = k.tail(target_);
    const double b0s = k.tail_star(target_);
    const double mv = k.umvue(target_);

    if (target_ == Target::Mu1) {
        switch (kind_) {
            case EstimatorKind::MLE: return 0.0;
            case EstimatorKind::UMVUE: return mv;
            case EstimatorKind::BAEE: return c0;
            case EstimatorKind::PitmanPNAEE: return pnaee_;
            default: break;
        }
        const double w = stats.t2 / stats.t1;
        const double w1 = stats.x2_min / stats.t1;
        switch (kind_) {
            case EstimatorKind::Stein: return std::min(c0, b0 * (1.0 + w));
            case EstimatorKind::SteinStar:
                return w1 > 0.0 ? std::min(c0, b0s * (1.0 + w + w1)) : c0;
            case EstimatorKind::ImprovedUMVUE: return std::min(mv, b0 * (1.0 + w));
            case EstimatorKind::ImprovedUMVUEStar:
                return w1 > 0.0 ? std::min(mv, b0s * (1.0 + w + w1)) : mv;
            case EstimatorKind::BrewsterZidek: return (*bz_)(w);
            case EstimatorKind::PitmanImproved: {
                const double l = median_factor_;
                return std::max(l, std::min(pnaee_, l * (1.0 + w)));
            }
            default: break;
        }
    } else {
        switch (kind_) {
            case EstimatorKind::MLE: return 0.0;
            case EstimatorKind::UMVUE: return mv;
            case EstimatorKind::BAEE: return c0;
            case EstimatorKind::PitmanPNAEE: return pnaee_;
            default: break;
        }
        const double ws = stats.t1 / stats.t2;
        const double w2 = stats.x1_min / stats.t2;
        switch (kind_) {
            case EstimatorKind::Stein: return std::max(c0, b0 * (1.0 + ws));
            case EstimatorKind::SteinStar:
                return w2 > 0.0 ? std::max(c0, b0s * (1.0 + ws + w2)) : c0;
            case EstimatorKind::ImprovedUMVUE: return std::max(mv, b0 * (1.0 + ws));
            case EstimatorKind::ImprovedUMVUEStar:
                return w2 > 0.0 ? std::max(mv, b0s * (1.0 + ws + w2)) : mv;
            case EstimatorKind::ImprovedMLE: return b0 * (1.0 + ws);
            case EstimatorKind::ImprovedMLEStar:
                return w2 > 0.0 ? std::max(0.0, b0s * (1.0 + ws + w2)) : 0.0;
            case EstimatorKind::BrewsterZidek: return (*bz_)(ws);
            case EstimatorKind::PitmanImproved:
                return std::max(median_factor_ * (1.0 + ws), pnaee_);
            default: break;
        }
    }
    throw Error(ErrorCode::UnsupportedKind, "estimator not available for this target");
}

Estimate PreparedEstimator::operator()(const SufficientStats& stats) const {
    const double phi = multiplier(stats);
    return {stats.x_min(target_) - phi * stats.t(target_), kind_, target_, phi};
}

Estimate estimate(Target target, EstimatorKind kind, const SufficientStats& stats,
                  const LossSpec& loss) {
    return PreparedEstimator(target, kind, loss, stats.design())(stats);
}

}  // namespace ordest
