#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "pinn/net.hpp"
#include "pinn/pde.hpp"
#include "pinn/sampling.hpp"

namespace pinn {

struct ScheduleSegment {
    long start;
    double lr;
};

struct AdamParams {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct TrainConfig {
    long iterations = 20000;
    std::vector<ScheduleSegment> schedule{{0, 1e-2}, {1000, 1e-3}, {3000, 5e-4}};
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    AdamParams adam;
    std::uint64_t seed = 0;
    int threads = 0; ///< 0 = hardware concurrency; any count is bit-reproducible
    long progress_interval = 1000; ///< stderr cadence; 0 silences progress

    void validate() const;
};

/// Rate of the last schedule segment whose start <= iteration.
double lr_at(const std::vector<ScheduleSegment>& schedule, long iteration);

struct AdamState {
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    long step = 0;
};

/// One bias-corrected Adam update, in place.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads, AdamState& state, double lr,
               const AdamParams& hp = {});

struct LossBreakdown {
    double init_loss = 0.0;
    double bound_loss = 0.0;
    double res_loss = 0.0;
    double total = 0.0;
};

// ---------------------------------------------------------------------------
// Tape-recorded losses: the reference route. Slow but exact, used by the
// gradient checks and small-net tests; the training loop itself runs the
// batched kernel in batch_grad.hpp, which is pinned to this route by test.
// ---------------------------------------------------------------------------

/// Mean over the initial set of (u(t,x) - target)^2.
ad::Var loss_init(const TapeNet& net, const SampleSet& samples);

/// Mean over the boundary set of (u(t,x) - target)^2.
ad::Var loss_bound(const TapeNet& net, const SampleSet& samples);

/// Mean over collocation points of residual^2; the jet evaluation is part
/// of the tape, so gradients differentiate through u_t, u_x, u_xx.
ad::Var loss_res(const TapeNet& net, const ParabolicPde& pde, const SampleSet& samples);

ad::Var total_loss(ad::Var init, ad::Var bound, ad::Var res, double alpha, double beta,
                   double gamma);

/// Loss values only (no tape), for reports and cross-checks.
LossBreakdown compute_losses(const Network& net, const ParabolicPde& pde,
                             const SampleSet& samples, double alpha, double beta, double gamma);

// ---------------------------------------------------------------------------
// Training loop
// ---------------------------------------------------------------------------

struct IterationRecord {
    long iteration;
    double lr;
    LossBreakdown loss;
    double elapsed_seconds;
};

struct TrainResult {
    Network net;
    std::vector<IterationRecord> history;
    double wall_seconds = 0.0;
};

/// Full-batch Adam for exactly config.iterations steps. Deterministic for a
/// fixed seed and thread count; the chunked reduction makes the result
/// independent of the thread count as well.
TrainResult train(const ParabolicPde& pde, Network net, const SampleSet& samples,
                  const TrainConfig& config);

/// Columns: iteration,lr,init_loss,bound_loss,res_loss,total,elapsed_seconds
void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::filesystem::path& path);

} // namespace pinn
