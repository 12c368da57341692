#pragma once

#include <string>

#include "fmstab/analysis.hpp"
#include "fmstab/config.hpp"
#include "fmstab/thresholds.hpp"
#include "fmstab/timeint.hpp"

namespace fmstab {

/// Dispatches to the model's threshold calculator, evaluating the paper's
/// sufficient conditions at the config's (mu, N) when a controller is given.
ThresholdReport certify(const ExperimentConfig& cfg);

struct SimulationOutput {
    RunRecord record;
    ModelState initial;
    std::optional<ControlSetup> control;
};

/// Builds initial data, target and controller from the config and runs it.
SimulationOutput simulate(const ExperimentConfig& cfg);

struct AnalysisOutput {
    std::string series;  ///< which recorded column (or derived square) was fitted
    DecayFit fit;        ///< exponential models
    AlgebraicCheck algebraic;  ///< NDWave
    Verdict verdict = Verdict::NOT_APPLICABLE;
};

/// Post-processing with the spec's window policy: drop the first 20% of the
/// horizon and everything before the state enters the model's absorbing ball.
AnalysisOutput analyze(const ExperimentConfig& cfg, const RunRecord& record,
                       const ThresholdReport& report);

void write_run_csv(const std::string& path, const RunRecord& record);
void write_meta_json(const std::string& path, const ExperimentConfig& cfg, const RunRecord& record);
void write_text(const std::string& path, const std::string& content);

/// Verdict document (fit + certificate comparison) as JSON text.
std::string verdict_json(const AnalysisOutput& out, const ThresholdReport& report);

/// Plot-ready CSV: t, value, log value, fitted line.
std::string fit_csv(const RunRecord& record, const std::string& column, const AnalysisOutput& out);

}  // namespace fmstab
