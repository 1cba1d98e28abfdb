#include "pinn/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "pinn/batch_grad.hpp"
#include "pinn/csv.hpp"
#include "pinn/errors.hpp"

namespace pinn {

void TrainConfig::validate() const {
    if (iterations < 0) throw ConfigError("iterations must be >= 0");
    if (schedule.empty()) throw ConfigError("learning-rate schedule must not be empty");
    if (schedule.front().start != 0) throw ConfigError("schedule must start at iteration 0");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i].lr <= 0.0) throw ConfigError("learning rates must be positive");
        if (i > 0 && schedule[i].start <= schedule[i - 1].start)
            throw ConfigError("schedule start iterations must be strictly increasing");
    }
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0)
        throw ConfigError("loss weights must be >= 0");
    if (alpha == 0.0 && beta == 0.0 && gamma == 0.0)
        throw ConfigError("loss weights must not all be zero");
    if (adam.beta1 < 0.0 || adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0)
        throw ConfigError("adam betas must lie in [0, 1)");
    if (adam.epsilon <= 0.0) throw ConfigError("adam epsilon must be positive");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (progress_interval < 0) throw ConfigError("progress_interval must be >= 0");
}

double lr_at(const std::vector<ScheduleSegment>& schedule, long iteration) {
    if (iteration < 0) throw UsageError("lr_at: iteration must be >= 0");
    if (schedule.empty()) throw UsageError("lr_at: empty schedule");
    double lr = schedule.front().lr;
    for (const auto& seg : schedule) {
        if (seg.start > iteration) break;
        lr = seg.lr;
    }
    return lr;
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grads, AdamState& state, double lr,
               const AdamParams& hp) {
    if (params.size() != grads.size()) throw UsageError("adam_step: size mismatch");
    if (lr <= 0.0) throw UsageError("adam_step: lr must be positive");
    if (!grads.allFinite())
        throw NumericError("adam_step: non-finite gradient entries, training aborted");

    if (state.m.size() != params.size()) {
        state.m = Eigen::VectorXd::Zero(params.size());
        state.v = Eigen::VectorXd::Zero(params.size());
        state.step = 0;
    }
    state.step += 1;
    const double b1 = hp.beta1, b2 = hp.beta2;
    state.m = b1 * state.m + (1.0 - b1) * grads;
    state.v.array() = b2 * state.v.array() + (1.0 - b2) * grads.array().square();
    const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
    params.array() -=
        lr * (state.m.array() / bc1) / ((state.v.array() / bc2).sqrt() + hp.epsilon);
}

namespace {

ad::Var mean_squared_mismatch(const TapeNet& net, const std::vector<SamplePoint>& pts,
                              const char* what) {
    if (pts.empty()) throw UsageError(std::string(what) + ": empty sample set");
    ad::Var acc = net.tape().constant(0.0);
    for (const auto& p : pts) {
        ad::Var d = net.value(p.t, p.x) - p.target;
        acc = acc + d * d;
    }
    return acc / static_cast<double>(pts.size());
}

} // namespace

ad::Var loss_init(const TapeNet& net, const SampleSet& samples) {
    return mean_squared_mismatch(net, samples.initial, "loss_init");
}

ad::Var loss_bound(const TapeNet& net, const SampleSet& samples) {
    return mean_squared_mismatch(net, samples.boundary, "loss_bound");
}

ad::Var loss_res(const TapeNet& net, const ParabolicPde& pde, const SampleSet& samples) {
    if (samples.collocation.empty()) throw UsageError("loss_res: empty collocation set");
    ad::Var acc = net.tape().constant(0.0);
    for (const auto& [t, x] : samples.collocation) {
        ad::Jet<ad::Var> u = net.forward_jet(t, x);
        ad::Var r = residual(pde, u, x, t);
        acc = acc + r * r;
    }
    return acc / static_cast<double>(samples.collocation.size());
}

ad::Var total_loss(ad::Var init, ad::Var bound, ad::Var res, double alpha, double beta,
                   double gamma) {
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || (alpha == 0.0 && beta == 0.0 && gamma == 0.0))
        throw UsageError("total_loss: weights must be >= 0 and not all zero");
    return init * alpha + bound * beta + res * gamma;
}

LossBreakdown compute_losses(const Network& net, const ParabolicPde& pde,
                             const SampleSet& samples, double alpha, double beta, double gamma) {
    LossBreakdown lb;
    double acc = 0.0;
    for (const auto& p : samples.initial) {
        double d = net.value(p.t, p.x) - p.target;
        acc += d * d;
    }
    lb.init_loss = acc / static_cast<double>(samples.initial.size());
    acc = 0.0;
    for (const auto& p : samples.boundary) {
        double d = net.value(p.t, p.x) - p.target;
        acc += d * d;
    }
    lb.bound_loss = acc / static_cast<double>(samples.boundary.size());
    acc = 0.0;
    for (const auto& [t, x] : samples.collocation) {
        double r = residual(pde, net.forward_jet(t, x), x, t);
        acc += r * r;
    }
    lb.res_loss = acc / static_cast<double>(samples.collocation.size());
    lb.total = alpha * lb.init_loss + beta * lb.bound_loss + gamma * lb.res_loss;
    return lb;
}

TrainResult train(const ParabolicPde& pde, Network net, const SampleSet& samples,
                  const TrainConfig& config) {
    config.validate();
    validate_shapes(net);

    BatchLossGrad engine(pde, net, samples, config.alpha, config.beta, config.gamma,
                         config.threads);
    Eigen::VectorXd theta = net.flatten();
    Eigen::VectorXd grad(theta.size());
    AdamState state;

    TrainResult result;
    result.history.reserve(static_cast<std::size_t>(config.iterations));

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    for (long it = 0; it < config.iterations; ++it) {
        const double lr = lr_at(config.schedule, it);
        LossBreakdown lb = engine.compute(theta, grad);
        if (!std::isfinite(lb.total)) {
            std::string last = result.history.empty()
                                   ? std::string("none")
                                   : "iteration " + std::to_string(result.history.back().iteration) +
                                         " total=" + format_g17(result.history.back().loss.total);
            throw NumericError("non-finite loss at iteration " + std::to_string(it) +
                               "; last finite breakdown: " + last);
        }
        result.history.push_back({it, lr, lb, elapsed()});
        adam_step(theta, grad, state, lr, config.adam);

        if (config.progress_interval > 0 &&
            (it % config.progress_interval == 0 || it + 1 == config.iterations)) {
            std::fprintf(stderr,
                         "[train] iter %6ld/%ld lr=%.1e total=%.3e (init=%.3e bound=%.3e "
                         "res=%.3e) %.1fs\n",
                         it, config.iterations, lr, lb.total, lb.init_loss, lb.bound_loss,
                         lb.res_loss, elapsed());
        }
    }

    net.unflatten(theta);
    result.net = std::move(net);
    result.wall_seconds = elapsed();
    return result;
}

void write_history_csv(const std::vector<IterationRecord>& history,
                       const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string());
    os << "iteration,lr,init_loss,bound_loss,res_loss,total,elapsed_seconds\n";
    for (const auto& rec : history)
        os << rec.iteration << ',' << format_g17(rec.lr) << ',' << format_g17(rec.loss.init_loss)
           << ',' << format_g17(rec.loss.bound_loss) << ',' << format_g17(rec.loss.res_loss) << ','
           << format_g17(rec.loss.total) << ',' << format_g17(rec.elapsed_seconds) << '\n';
    if (!os) throw IoError("write failed: " + path.string());
}

} // namespace pinn
