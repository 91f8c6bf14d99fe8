#pragma once

#include "ordest/estimators.hpp"
#include "ordest/loss.hpp"
#include "ordest/model.hpp"
#include "ordest/schemes.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ordest {

/// Seed used whenever none is given.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Counter-based random stream: the state is derived from (seed, stream) with
/// SplitMix64, so replication k draws the same numbers no matter which thread
/// runs it or in what order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t next() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard exponential by inversion, -log(1 - U).
    double exponential() noexcept;

private:
    std::uint64_t state_;
};

enum class SchemeKind { Complete, TypeII, Progressive, Records };

std::string_view to_string(SchemeKind kind) noexcept;
SchemeKind parse_scheme_kind(std::string_view text);

struct SimConfig {
    int n1 = 4;
    int n2 = 5;
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    int reps = 20000;
    std::uint64_t seed = kDefaultSeed;
    LossSpec loss = LossSpec::squared();
    Target target = Target::Mu1;
    EstimatorKind baseline = EstimatorKind::BAEE;
    std::vector<EstimatorKind> candidates;
    bool order_restricted = true;

    // Sampling scheme. For type2, n_i is the number of units on test and r_i
    // the number of observed failures (0 means r_i = n_i). For progressive,
    // removals_i has one entry per observed failure and n_i must equal
    // m_i + sum(removals_i). For records, n_i is the number of records.
    SchemeKind scheme = SchemeKind::Complete;
    int r1 = 0;
    int r2 = 0;
    std::vector<int> removals1;
    std::vector<int> removals2;

    /// Worker threads; results do not depend on it.
    int workers = 1;

    PopulationParams params() const;
    Scheme scheme_of(Target population) const;
    Design design() const;
    /// Requires reps >= 100. Throws InvalidArgument / InvalidCensoringPlan /
    /// SampleTooSmall.
    void validate() const;
};

/// Field-by-field equality (the loss compares by its textual form).
bool same_config(const SimConfig& a, const SimConfig& b);

/// One population drawn under `scheme` and reduced.
ReducedPopulation draw_population(double mu, double sigma, const Scheme& scheme, RngStream& rng);

/// Replication `rep` of the design described by `config`: both populations
/// are drawn from RngStream(config.seed, rep).
SufficientStats draw_replication(const SimConfig& config, std::uint64_t rep);
SufficientStats draw_replication(const PopulationParams& params, const Scheme& scheme1,
                                 const Scheme& scheme2, RngStream& rng);

struct RiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int reps = 0;
};

struct PriEstimate {
    double pri = 0.0;
    double std_error = 0.0;
};

struct CandidateResult {
    EstimatorKind kind = EstimatorKind::BAEE;
    RiskEstimate risk;
    PriEstimate pri;
};

/// Every estimator of one cell evaluated on one shared replication stream.
struct CellResult {
    SimConfig config;
    RiskEstimate baseline;
    std::vector<CandidateResult> candidates;
};

/// Runs config.reps paired replications of the baseline and all candidates.
CellResult simulate(const SimConfig& config);

RiskEstimate risk_mc(EstimatorKind kind, const SimConfig& config);
/// 100 (R_baseline - R_candidate) / R_baseline on a shared stream, with a
/// delta-method standard error.
PriEstimate pri_mc(EstimatorKind baseline, EstimatorKind candidate, const SimConfig& config);

struct PriRow {
    double sigma1 = 0.0, sigma2 = 0.0;
    int n1 = 0, n2 = 0;
    double mu1 = 0.0, mu2 = 0.0;
    Target target = Target::Mu1;
    EstimatorKind baseline = EstimatorKind::BAEE;
    EstimatorKind estimator = EstimatorKind::BAEE;
    double pri = 0.0;
    double std_error = 0.0;
    /// Non-empty when the cell failed; pri/std_error are then NaN.
    std::string error;
};

struct PriTable {
    std::vector<PriRow> rows;
};

/// Cells are simulated independently; a failing cell yields rows carrying
/// the error message instead of aborting the table.
PriTable run_table(const std::vector<SimConfig>& grid);

/// Calls body(rep) for rep in [0, reps), split into contiguous chunks over
/// `workers` threads. The first failure (lowest chunk) is rethrown.
void for_each_replication(int reps, int workers, const std::function<void(int)>& body);

/// Deterministic pairwise sum.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace ordest
