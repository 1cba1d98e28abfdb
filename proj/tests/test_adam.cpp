#include <doctest.h>

#include <cmath>

#include "pinn/training.hpp"

using namespace pinn;

TEST_CASE("first adam step moves by about lr in the gradient direction") {
    // theta = 0, g = 0.5, lr = 0.01: bias-corrected update = lr * g/(|g| + eps)
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(1);
    Eigen::VectorXd g(1);
    g << 0.5;
    AdamState state;
    adam_step(theta, g, state, 0.01);
    CHECK(theta[0] == doctest::Approx(-0.01).epsilon(1e-7));
    CHECK(state.step == 1);
}

TEST_CASE("zero gradients leave parameters fixed while moments decay") {
    Eigen::VectorXd theta(2);
    theta << 1.0, -2.0;
    Eigen::VectorXd g(2);
    g << 0.4, -0.1;
    AdamState state;
    adam_step(theta, g, state, 0.01);
    Eigen::VectorXd after_first = theta;
    Eigen::VectorXd m_before = state.m;
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    adam_step(theta, zero, state, 0.01);
    // moments shrank, parameters moved only by the decayed momentum term
    CHECK(state.m.norm() < m_before.norm());
    adam_step(theta, zero, state, 0.01);
    CHECK(state.step == 3);
    (void)after_first;
}

TEST_CASE("opposite gradients move parameters symmetrically") {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd g(2);
    g << 0.7, -0.7;
    AdamState state;
    adam_step(theta, g, state, 0.05);
    CHECK(theta[0] == doctest::Approx(-theta[1]).epsilon(1e-15));
}

TEST_CASE("hand-evaluated two-step adam") {
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8, lr = 0.1;
    Eigen::VectorXd theta(1);
    theta << 2.0;
    AdamState state;
    double m = 0.0, v = 0.0, ref = 2.0;
    for (int step = 1; step <= 2; ++step) {
        double g = 2.0 * ref; // gradient of x^2 at the reference trajectory
        m = b1 * m + (1 - b1) * g;
        v = b2 * v + (1 - b2) * g * g;
        double mh = m / (1 - std::pow(b1, step));
        double vh = v / (1 - std::pow(b2, step));
        ref -= lr * mh / (std::sqrt(vh) + eps);

        Eigen::VectorXd grad(1);
        grad << 2.0 * theta[0];
        adam_step(theta, grad, state, lr);
    }
    CHECK(theta[0] == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("non-finite gradients abort") {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd g(2);
    g << 1.0, std::nan("");
    AdamState state;
    CHECK_THROWS_AS(adam_step(theta, g, state, 0.01), NumericError);
}

TEST_CASE("size and lr preconditions") {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
    AdamState state;
    CHECK_THROWS_AS(adam_step(theta, g, state, 0.01), UsageError);
    Eigen::VectorXd g2 = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(adam_step(theta, g2, state, 0.0), UsageError);
}

TEST_CASE("piecewise schedule lookup") {
    std::vector<ScheduleSegment> schedule{{0, 1e-2}, {1000, 1e-3}, {3000, 5e-4}};
    CHECK(lr_at(schedule, 0) == 1e-2);
    CHECK(lr_at(schedule, 500) == 1e-2);
    CHECK(lr_at(schedule, 999) == 1e-2);
    CHECK(lr_at(schedule, 1000) == 1e-3);
    CHECK(lr_at(schedule, 2000) == 1e-3);
    CHECK(lr_at(schedule, 3000) == 5e-4);
    CHECK(lr_at(schedule, 10000) == 5e-4);
    CHECK(lr_at(schedule, 19999) == 5e-4);
    CHECK_THROWS_AS(lr_at(schedule, -1), UsageError);
}

TEST_CASE("train config validation") {
    TrainConfig cfg;
    cfg.validate();
    TrainConfig bad = cfg;
    bad.schedule = {{100, 1e-2}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.schedule = {{0, 1e-2}, {50, 1e-3}, {50, 1e-4}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.schedule = {{0, -1.0}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.alpha = bad.beta = bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.iterations = -5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
