#pragma once

#include "clawlab/claw_recursive.hpp"
#include "clawlab/instance.hpp"
#include "clawlab/ledger.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace clawlab {

struct SweepConfig {
    std::vector<std::int64_t> n_list;
    std::vector<double> kappa_list;
    std::vector<int> depth_list;
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    CostModel cost;
    BMode b_mode = BMode::bound;
    double sample_const = 4.0;
    Family family = Family::random_planted_claw;
    unsigned jobs = 1;

    void validate() const;
};

struct SweepRow {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double kappa = 0;
    int depth = 0;
    std::int64_t trial = 0;
    bool decision = false;
    bool truth = false;
    bool correct = false;
    std::int64_t x_reads = 0;
    std::int64_t y_reads = 0;
    double charged_cost = 0;
};

struct SweepSummary {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double kappa = 0;
    int depth = 0;
    std::int64_t trials = 0;
    double success_rate = 0;
    double mean_cost = 0;
    double median_cost = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;          // group order of the config lists, then trial index
    std::vector<SweepSummary> summary;   // one per (n, kappa, depth)
};

/// Runs every trial of the grid; trials run on up to cfg.jobs threads and
/// the output order does not depend on scheduling.
SweepResult run_sweep(const SweepConfig& cfg);

/// One trial: the instance depends on (seed, n, kappa, trial), the run also on depth.
SweepRow run_trial(const SweepConfig& cfg, std::int64_t n, std::size_t kappa_index, int depth, std::int64_t trial);

inline constexpr const char* kSweepCsvHeader = "n,k,kappa,depth,trial,decision,truth,correct,x_reads,y_reads,charged_cost";
inline constexpr const char* kSummaryCsvHeader = "n,k,kappa,depth,trials,success_rate,mean_cost,median_cost";

/// Data rows under kSweepCsvHeader, a blank line, then summary rows under kSummaryCsvHeader.
void write_sweep_csv(std::ostream& out, const SweepResult& r);
nlohmann::json sweep_to_json(const SweepResult& r);

/// Reads the data rows of either output format.
std::vector<SweepRow> read_sweep_rows(std::istream& in);

std::vector<SweepSummary> summarize_rows(const std::vector<SweepRow>& rows);

struct LinearFit {
    double slope = 0, intercept = 0, r2 = 0;
};
LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

struct FitResult {
    double kappa = 0;
    int depth = 0;
    std::size_t points = 0;
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    double predicted = 0;         // T_depth(kappa)
    double epsilon_achieved = 0;  // T_depth(kappa) - (kappa/4 + 1/2)
};

/// Log-log fit of mean charged cost against n per (kappa, depth) group.
/// Groups with fewer than four distinct n are skipped and reported in `warnings`.
std::vector<FitResult> fit_sweep(const std::vector<SweepRow>& rows, std::vector<std::string>* warnings = nullptr);

nlohmann::json fit_to_json(const std::vector<FitResult>& fits);

std::string format_number(double v);

} // namespace clawlab
