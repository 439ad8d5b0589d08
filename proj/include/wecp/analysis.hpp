// Sweeps and cross-checks behind the command-line tool. Every
// command writes its table to `out` and diagnostics to `err`.

#pragma once

#include "wecp/cavity.hpp"
#include "wecp/ensemble.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wecp {

struct Grid {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    /// Throws ParameterError unless step > 0 and max >= min.
    void validate(const std::string& name) const;
    /// min + k * step for every k that stays within max (1e-9 slack).
    [[nodiscard]] std::vector<double> values() const;
};

struct SweepConfig {
    Grid beta_sq{0.01, 0.66, 0.01};
    Grid g_ratio{0.5, 3.0, 0.05};
    Grid ks_ratio{0.0, 1.0, 0.02};

    // single cavity point for `metrics` and lossy `run`
    double g_point = 2.4;
    double ks_point = 0.0;
    double gamma = 0.1;
    LossyPhase phase = LossyPhase::Ideal;

    // protocol input for `run`
    double alpha_sq = 1.0 / 3.0;
    double beta_sq_point = 1.0 / 3.0;
    double gamma_sq_point = 1.0 / 3.0;
    bool lossy = false;
    PairCounting counting = PairCounting::CountOne;
    bool enumerate = false;

    int n_rounds = 1;
    std::uint64_t n_trajectories = 100000;
    std::uint64_t seed = 1;
    int compare_samples = 3;
    unsigned threads = 0;
};

/// Status codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitOracle = 2;

/// 12 significant digits, the CSV number format.
std::string format_number(double x);

int cmd_fig5(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_fig6(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_metrics(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const SweepConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wecp
