#include "ordest/schemes.hpp"

#include "ordest/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ordest {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

bool nondecreasing(const std::vector<double>& x) { return std::is_sorted(x.begin(), x.end()); }

void plan_error(const std::string& what) { throw Error(ErrorCode::InvalidCensoringPlan, what); }

}  // namespace

int ProgressiveScheme::total() const noexcept {
    return observed() + std::accumulate(removals.begin(), removals.end(), 0);
}

std::string_view scheme_name(const Scheme& scheme) noexcept {
    return std::visit(overloaded{
                          [](const CompleteScheme&) { return std::string_view("complete"); },
                          [](const TypeIIScheme&) { return std::string_view("type2"); },
                          [](const ProgressiveScheme&) { return std::string_view("progressive"); },
                          [](const RecordsScheme&) { return std::string_view("records"); },
                      },
                      scheme);
}

void validate_scheme(const Scheme& scheme) {
    std::visit(overloaded{
                   [](const CompleteScheme& s) {
                       if (s.n < 2) {
                           throw Error(ErrorCode::SampleTooSmall, "complete sample needs n >= 2");
                       }
                   },
                   [](const TypeIIScheme& s) {
                       if (s.r < 2 || s.r > s.n) plan_error("type-II plan needs 2 <= r <= n");
                   },
                   [](const ProgressiveScheme& s) {
                       if (s.observed() < 2) plan_error("progressive plan needs m >= 2 failures");
                       for (int r : s.removals) {
                           if (r < 0) plan_error("removal counts must be non-negative");
                       }
                       if (s.n_total != 0 && s.n_total != s.total()) {
                           plan_error("removal counts do not add up: m + sum(R) = " +
                                      std::to_string(s.total()) + " but n = " +
                                      std::to_string(s.n_total));
                       }
                   },
                   [](const RecordsScheme& s) {
                       if (s.count < 2) {
                           throw Error(ErrorCode::SampleTooSmall, "need at least 2 records");
                       }
                   },
               },
               scheme);
}

PopulationDesign scheme_design(const Scheme& scheme) {
    validate_scheme(scheme);
    return std::visit(overloaded{
                          [](const CompleteScheme& s) {
                              return PopulationDesign{s.n, static_cast<double>(s.n)};
                          },
                          [](const TypeIIScheme& s) {
                              return PopulationDesign{s.r, static_cast<double>(s.n)};
                          },
                          [](const ProgressiveScheme& s) {
                              return PopulationDesign{s.observed(),
                                                      static_cast<double>(s.total())};
                          },
                          [](const RecordsScheme& s) { return PopulationDesign{s.count, 1.0}; },
                      },
                      scheme);
}

ReducedPopulation reduce_complete(const SchemeSample& s) {
    const auto* plan = std::get_if<CompleteScheme>(&s.scheme);
    if (!plan) throw Error(ErrorCode::InvalidArgument, "not a complete-sample scheme");
    const auto& x = s.observations;
    if (x.size() < 2) throw Error(ErrorCode::SampleTooSmall, "need at least 2 observations");
    if (plan->n != 0 && plan->n != static_cast<int>(x.size())) {
        throw Error(ErrorCode::InvalidArgument, "observation count does not match n");
    }
    const double m = *std::min_element(x.begin(), x.end());
    double t = 0.0;
    for (double v : x) t += v - m;
    const int n = static_cast<int>(x.size());
    return {m, t, n, static_cast<double>(n)};
}

ReducedPopulation reduce_type2(const SchemeSample& s) {
    const auto* plan = std::get_if<TypeIIScheme>(&s.scheme);
    if (!plan) throw Error(ErrorCode::InvalidArgument, "not a type-II scheme");
    validate_scheme(*plan);
    const auto& x = s.observations;
    if (static_cast<int>(x.size()) != plan->r) {
        plan_error("type-II sample must contain exactly r observations");
    }
    if (!nondecreasing(x)) plan_error("type-II observations must be sorted");
    // Total time on test minus n times the first failure.
    double sum = 0.0;
    for (double v : x) sum += v - x.front();
    const double t = sum + (plan->n - plan->r) * (x.back() - x.front());
    return {x.front(), t, plan->r, static_cast<double>(plan->n)};
}

ReducedPopulation reduce_progressive(const SchemeSample& s) {
    const auto* plan = std::get_if<ProgressiveScheme>(&s.scheme);
    if (!plan) throw Error(ErrorCode::InvalidArgument, "not a progressive scheme");
    validate_scheme(*plan);
    const auto& x = s.observations;
    if (static_cast<int>(x.size()) != plan->observed()) {
        plan_error("progressive sample must have one removal count per observed failure");
    }
    if (!nondecreasing(x)) plan_error("progressive observations must be sorted");
    double t = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) t += (plan->removals[j] + 1) * (x[j] - x.front());
    return {x.front(), t, plan->observed(), static_cast<double>(plan->total())};
}

ReducedPopulation reduce_records(const SchemeSample& s) {
    const auto* plan = std::get_if<RecordsScheme>(&s.scheme);
    if (!plan) throw Error(ErrorCode::InvalidArgument, "not a records scheme");
    const auto& x = s.observations;
    if (x.size() < 2) throw Error(ErrorCode::SampleTooSmall, "need at least 2 records");
    if (plan->count != 0 && plan->count != static_cast<int>(x.size())) {
        throw Error(ErrorCode::InvalidArgument, "record count does not match");
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) {
            throw Error(ErrorCode::NotRecordSequence,
                        "records must be strictly increasing (position " + std::to_string(i) +
                            ")");
        }
    }
    return {x.front(), x.back() - x.front(), static_cast<int>(x.size()), 1.0};
}

ReducedPopulation reduce(const SchemeSample& s) {
    return std::visit(overloaded{
                          [&](const CompleteScheme&) { return reduce_complete(s); },
                          [&](const TypeIIScheme&) { return reduce_type2(s); },
                          [&](const ProgressiveScheme&) { return reduce_progressive(s); },
                          [&](const RecordsScheme&) { return reduce_records(s); },
                      },
                      s.scheme);
}

SufficientStats make_stats(const ReducedPopulation& pop1, const ReducedPopulation& pop2) {
    SufficientStats s;
    s.x1_min = pop1.x_min;
    s.x2_min = pop2.x_min;
    s.t1 = pop1.t;
    s.t2 = pop2.t;
    s.n1 = pop1.effective_shape;
    s.n2 = pop2.effective_shape;
    s.rate1 = pop1.rate;
    s.rate2 = pop2.rate;
    return s;
}

}  // namespace ordest
