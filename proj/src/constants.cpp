#include "ordest/constants.hpp"

#include "ordest/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <tuple>

namespace ordest {

namespace {

constexpr double kRootTol = 1e-15;

void check_pop(const PopulationDesign& pop) {
    if (pop.n < 2) throw Error(ErrorCode::SampleTooSmall, "n must be at least 2");
    if (!(pop.rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "rate must be positive");
}

void check_linex(const LossSpec& loss, const PopulationDesign& pop) {
    if (loss.kind() == LossSpec::Kind::Linex && loss.linex_a() >= pop.rate) {
        std::ostringstream os;
        os << "linex parameter a=" << loss.linex_a() << " must be below the exponential rate "
           << pop.rate << " (n > a)";
        throw Error(ErrorCode::LinexShapeViolation, os.str());
    }
}

// Linex closed form shared by every constant: (1/a)((rate/(rate-a))^(1/shape) - 1).
double linex_closed(double a, double rate, double shape) {
    return std::expm1(std::log(rate / (rate - a)) / shape) / a;
}

}  // namespace

double baee_constant_numeric(const LossSpec& loss, const PopulationDesign& pop,
                             const numerics::QuadSettings& settings) {
    check_pop(pop);
    check_linex(loss, pop);
    auto equation = [&](double c) {
        return numerics::expect_exp_gamma(
            [&](double u, double v) { return loss.deriv(u - c * v) * v; }, pop.rate, pop.n - 1.0,
            settings);
    };
    return numerics::solve_root_widening(equation, 1e-12, 10.0 / (pop.rate * pop.n), kRootTol);
}

double tail_constant_numeric(const LossSpec& loss, const PopulationDesign& pop, double gamma_shape,
                             const numerics::QuadSettings& settings) {
    check_pop(pop);
    check_linex(loss, pop);
    if (!(gamma_shape >= 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "gamma_shape must be at least 2");
    }
    auto equation = [&](double b) {
        return numerics::expect_exp_gamma([&](double u, double z) { return loss.deriv(u - b * z); },
                                          pop.rate, gamma_shape, settings);
    };
    return numerics::solve_root_widening(equation, 1e-12, 10.0 / (pop.rate * gamma_shape),
                                         kRootTol);
}

double baee_constant(const LossSpec& loss, const PopulationDesign& pop) {
    check_pop(pop);
    check_linex(loss, pop);
    switch (loss.kind()) {
        case LossSpec::Kind::SquaredError: return 1.0 / (pop.rate * pop.n);
        case LossSpec::Kind::Linex: return linex_closed(loss.linex_a(), pop.rate, pop.n);
        case LossSpec::Kind::Custom: break;
    }
    return baee_constant_numeric(loss, pop);
}

double tail_constant(const LossSpec& loss, const PopulationDesign& pop, double gamma_shape) {
    check_pop(pop);
    check_linex(loss, pop);
    if (!(gamma_shape >= 2.0)) {
        throw Error(ErrorCode::InvalidArgument, "gamma_shape must be at least 2");
    }
    switch (loss.kind()) {
        case LossSpec::Kind::SquaredError: return 1.0 / (pop.rate * gamma_shape);
        case LossSpec::Kind::Linex: return linex_closed(loss.linex_a(), pop.rate, gamma_shape);
        case LossSpec::Kind::Custom: break;
    }
    return tail_constant_numeric(loss, pop, gamma_shape);
}

double umvue_constant(const PopulationDesign& pop) {
    check_pop(pop);
    return 1.0 / (pop.rate * (pop.n - 1));
}

namespace {

using CacheKey = std::tuple<std::string, int, double, int, double>;

std::shared_mutex cache_mutex;
std::map<CacheKey, EquivariantConstants> cache;

EquivariantConstants compute_constants(const LossSpec& loss, const Design& design) {
    design.validate();
    const double shape = design.pop1.n + design.pop2.n - 1.0;
    EquivariantConstants k;
    k.design = design;
    k.c01 = baee_constant(loss, design.pop1);
    k.c02 = baee_constant(loss, design.pop2);
    k.b01 = tail_constant(loss, design.pop1, shape);
    k.b02 = tail_constant(loss, design.pop2, shape);
    k.b01_star = tail_constant(loss, design.pop1, shape + 1.0);
    k.b02_star = tail_constant(loss, design.pop2, shape + 1.0);
    k.umvue1 = umvue_constant(design.pop1);
    k.umvue2 = umvue_constant(design.pop2);
    return k;
}

}  // namespace

EquivariantConstants solve_constants(const LossSpec& loss, const Design& design) {
    const CacheKey key{loss.cache_key(), design.pop1.n, design.pop1.rate, design.pop2.n,
                       design.pop2.rate};
    {
        std::shared_lock lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    EquivariantConstants k = compute_constants(loss, design);
    std::unique_lock lock(cache_mutex);
    return cache.try_emplace(key, k).first->second;
}

std::string_view to_string(DominanceCase which) noexcept {
    switch (which) {
        case DominanceCase::Mu1Stein: return "mu1_stein";
        case DominanceCase::Mu1Star: return "mu1_star";
        case DominanceCase::Mu2Stein: return "mu2_stein";
        case DominanceCase::Mu2Star: return "mu2_star";
    }
    return "unknown";
}

DominanceResult dominance_check(const LossSpec& loss, const Design& design, DominanceCase which,
                                const numerics::QuadSettings& settings) {
    const EquivariantConstants k = solve_constants(loss, design);
    const bool mu1 = which == DominanceCase::Mu1Stein || which == DominanceCase::Mu1Star;
    const bool star = which == DominanceCase::Mu1Star || which == DominanceCase::Mu2Star;
    const PopulationDesign& pop = mu1 ? design.pop1 : design.pop2;
    const Target target = mu1 ? Target::Mu1 : Target::Mu2;
    const double b = star ? k.tail_star(target) : k.tail(target);

    const double value = numerics::expect_exp_gamma(
        [&](double u, double v) { return loss.deriv(u - b * v) * v; }, pop.rate, pop.n - 1.0,
        settings);
    return {mu1 ? value >= 0.0 : value <= 0.0, value};
}

}  // namespace ordest
