#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pinn/batch_grad.hpp"
#include "pinn/csv.hpp"
#include "pinn/rng.hpp"
#include "pinn/training.hpp"

using namespace pinn;

namespace {

TrainConfig small_config(long iterations) {
    TrainConfig cfg;
    cfg.iterations = iterations;
    cfg.schedule = {{0, 1e-2}, {50, 1e-3}};
    cfg.progress_interval = 0;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_CASE("zero iterations return the initial network unchanged") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet samples = sample_uniform(pde, 8, 4, 16, 2);
    Network net = init_glorot({2, 6, 1}, Activation::gelu, 4);
    Eigen::VectorXd before = net.flatten();
    TrainResult result = train(pde, net, samples, small_config(0));
    CHECK(result.history.empty());
    CHECK((result.net.flatten().array() == before.array()).all());
}

TEST_CASE("history records every iteration with the scheduled rate") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet samples = sample_uniform(pde, 8, 4, 16, 2);
    Network net = init_glorot({2, 6, 1}, Activation::gelu, 4);
    TrainResult result = train(pde, net, samples, small_config(60));
    REQUIRE(result.history.size() == 60);
    CHECK(result.history[0].iteration == 0);
    CHECK(result.history[0].lr == 1e-2);
    CHECK(result.history[49].lr == 1e-2);
    CHECK(result.history[50].lr == 1e-3);
    for (const auto& rec : result.history) {
        CHECK(std::isfinite(rec.loss.total));
        CHECK(rec.loss.total ==
              doctest::Approx(rec.loss.init_loss + rec.loss.bound_loss + rec.loss.res_loss)
                  .epsilon(1e-15));
    }
}

TEST_CASE("same seed and config give bitwise-identical loss histories") {
    ParabolicPde pde = allen_cahn_problem();
    SampleSet samples = sample_uniform(pde, 10, 6, 40, 12);
    auto run = [&](int threads) {
        Network net = init_glorot({2, 8, 8, 1}, Activation::gelu, 7);
        TrainConfig cfg = small_config(40);
        cfg.threads = threads;
        return train(pde, net, samples, cfg);
    };
    TrainResult a = run(1);
    TrainResult b = run(1);
    TrainResult c = run(2); // the chunked reduction is thread-count independent
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].loss.total == b.history[i].loss.total);
        CHECK(a.history[i].loss.total == c.history[i].loss.total);
        CHECK(a.history[i].loss.res_loss == c.history[i].loss.res_loss);
    }
    CHECK((a.net.flatten().array() == b.net.flatten().array()).all());
    CHECK((a.net.flatten().array() == c.net.flatten().array()).all());
}

TEST_CASE("loss decreases on a short real run") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet samples = sample_uniform(pde, 32, 16, 128, 19);
    Network net = init_glorot({2, 10, 10, 1}, Activation::gelu, 19);
    TrainConfig cfg = small_config(300);
    cfg.threads = 2;
    TrainResult result = train(pde, net, samples, cfg);
    CHECK(result.history.back().loss.total < 0.05 * result.history.front().loss.total);
}

TEST_CASE("scaling all loss weights by k scales losses and gradients exactly") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet samples = sample_uniform(pde, 8, 4, 20, 23);
    Network net = init_glorot({2, 6, 6, 1}, Activation::gelu, 29);
    Eigen::VectorXd theta0 = net.flatten();
    const double k = 2.0;

    BatchLossGrad base(pde, net, samples, 1, 1, 1, 1);
    BatchLossGrad scaled(pde, net, samples, k, k, k, 1);
    Eigen::VectorXd g_base, g_scaled;
    LossBreakdown lb_base = base.compute(theta0, g_base);
    LossBreakdown lb_scaled = scaled.compute(theta0, g_scaled);
    CHECK(lb_scaled.total == k * lb_base.total);
    CHECK((g_scaled.array() == k * g_base.array()).all());

    // plain gradient descent: k-scaled weights with lr/k walk the identical
    // parameter trajectory bit for bit
    Eigen::VectorXd ta = theta0, tb = theta0;
    const double lr = 0.05;
    for (int it = 0; it < 20; ++it) {
        base.compute(ta, g_base);
        scaled.compute(tb, g_scaled);
        ta -= lr * g_base;
        tb -= (lr / k) * g_scaled;
    }
    CHECK((ta.array() == tb.array()).all());
}

TEST_CASE("tape-route gradient of the total loss matches finite differences") {
    // 2 hidden layers x 8, 20 random parameters, central step 1e-5
    ParabolicPde pde = nws_problem({0.1});
    SampleSet samples = sample_uniform(pde, 10, 6, 20, 31);
    Network net = init_glorot({2, 8, 8, 1}, Activation::gelu, 37);

    ad::Tape tape;
    TapeNet tnet(tape, net);
    ad::Var total = total_loss(loss_init(tnet, samples), loss_bound(tnet, samples),
                               loss_res(tnet, pde, samples), 1, 1, 1);
    auto grad = tape.gradient(total);

    Eigen::VectorXd theta = net.flatten();
    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    const double h = 1e-5;
    Rng rng(41);
    Network probe = net;
    for (int k = 0; k < 20; ++k) {
        auto i = static_cast<Eigen::Index>(rng.next_u64() % theta.size());
        Eigen::VectorXd tp = theta;
        tp[i] += h;
        probe.unflatten(tp);
        double lp = compute_losses(probe, pde, samples, 1, 1, 1).total;
        tp[i] = theta[i] - h;
        probe.unflatten(tp);
        double lm = compute_losses(probe, pde, samples, 1, 1, 1).total;
        double fd = (lp - lm) / (2 * h);
        double denom = std::max({std::abs(fd), std::abs(grad[static_cast<std::size_t>(i)]),
                                 1e-3 * gmax});
        CHECK(std::abs(grad[static_cast<std::size_t>(i)] - fd) <= 1e-4 * denom);
    }
}

TEST_CASE("history csv round-trips") {
    std::vector<IterationRecord> history = {
        {0, 1e-2, {0.1, 0.2, 0.3, 0.6}, 0.5},
        {1, 1e-3, {0.01, 0.02, 0.03, 0.06}, 1.25},
    };
    auto path = std::filesystem::temp_directory_path() / "pinn_history_test.csv";
    write_history_csv(history, path);
    CsvFile csv = read_csv(path);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.header[0] == "iteration");
    CHECK(parse_double(csv.rows[1][1]) == 1e-3);
    CHECK(parse_double(csv.rows[0][5]) == 0.6);
    CHECK(parse_double(csv.rows[1][6]) == 1.25);
}
