#pragma once

#include "ordest/model.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace ordest {

/// n observed values, no censoring.
struct CompleteScheme {
    int n = 0;
};

/// Life test of n units stopped at the r-th failure.
struct TypeIIScheme {
    int n = 0;
    int r = 0;
};

/// Progressive type-II censoring: removals[j] surviving units are withdrawn at
/// the (j+1)-th observed failure. The total n is m + sum(removals); `n_total`
/// may be left at 0 to have it inferred, otherwise it must agree.
struct ProgressiveScheme {
    std::vector<int> removals;
    int n_total = 0;

    int observed() const noexcept { return static_cast<int>(removals.size()); }
    int total() const noexcept;
};

/// Upper record values of an i.i.d. stream.
struct RecordsScheme {
    int count = 0;
};

using Scheme = std::variant<CompleteScheme, TypeIIScheme, ProgressiveScheme, RecordsScheme>;

std::string_view scheme_name(const Scheme& scheme) noexcept;

/// Validates the plan itself (sizes, removal totals) without data.
void validate_scheme(const Scheme& scheme);

/// Shape and exponential rate the reduced statistics follow under `scheme`.
PopulationDesign scheme_design(const Scheme& scheme);

struct SchemeSample {
    Scheme scheme;
    std::vector<double> observations;
};

/// One population reduced to (X_min, T). T ~ Gamma(effective_shape - 1, sigma)
/// and (X_min - mu) / sigma ~ Exp(rate).
struct ReducedPopulation {
    double x_min = 0.0;
    double t = 0.0;
    int effective_shape = 2;
    double rate = 2.0;
};

ReducedPopulation reduce_complete(const SchemeSample& s);
ReducedPopulation reduce_type2(const SchemeSample& s);
ReducedPopulation reduce_progressive(const SchemeSample& s);
ReducedPopulation reduce_records(const SchemeSample& s);
/// Dispatches on the scheme.
ReducedPopulation reduce(const SchemeSample& s);

/// Combines two reduced populations; rates other than n are kept explicitly.
SufficientStats make_stats(const ReducedPopulation& pop1, const ReducedPopulation& pop2);

}  // namespace ordest
