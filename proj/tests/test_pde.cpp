#include <doctest.h>

#include <cmath>

#include "pinn/pde.hpp"
#include "pinn/rng.hpp"

using namespace pinn;

TEST_CASE("nws problem carries the published coefficients") {
    ParabolicPde pde = nws_problem({0.1});
    CHECK(pde.m == 1.0);
    CHECK(pde.n == 2.0);
    CHECK(pde.o == -3.0);
    CHECK(pde.p == 2);
    CHECK(!pde.eta);
    CHECK(pde.a == 0.0);
    CHECK(pde.b == 1.0);
    CHECK(pde.t_final == 1.0);
    CHECK(pde.initial(0.7) == 0.1);
    CHECK(pde.boundary_left(0.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(pde.boundary_right(0.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("nws exact solution values") {
    CHECK(exact_nws(0.1, 0.42, 0.0) == doctest::Approx(0.1).epsilon(1e-15));

    // high-precision oracle evaluated in long double
    const long double lambda = 0.1L;
    const long double e2 = std::exp(2.0L);
    const long double oracle =
        (-2.0L * lambda * e2) / (-2.0L + 3.0L * lambda * (1.0L - e2));
    CHECK(exact_nws(0.1, 0.5, 1.0) ==
          doctest::Approx(static_cast<double>(oracle)).epsilon(1e-14));
    CHECK(exact_nws(0.1, 0.5, 1.0) == doctest::Approx(0.377307).epsilon(2e-6));

    // long-time limit is the logistic equilibrium 2/3
    CHECK(exact_nws(0.1, 0.0, 20.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("nws exact solution is x-invariant and both boundaries coincide") {
    ParabolicPde pde = nws_problem({0.1});
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        double t = rng.uniform01();
        CHECK(exact_nws(0.1, rng.uniform01(), t) == exact_nws(0.1, rng.uniform01(), t));
        CHECK(pde.boundary_left(t) == pde.boundary_right(t));
    }
}

TEST_CASE("nws rejects lambda whose denominator vanishes inside the horizon") {
    CHECK_THROWS_AS(nws_problem({-0.11}), ConfigError);
    // and the raw evaluator reports the singularity itself
    const double t_star = 0.5 * std::log(1.0 + 2.0 / 0.33);
    CHECK_THROWS_AS(exact_nws(-0.11, 0.0, t_star), NumericError);
}

TEST_CASE("allen-cahn problem carries the published coefficients") {
    ParabolicPde pde = allen_cahn_problem();
    CHECK(pde.m == 1.0);
    CHECK(pde.n == 1.0);
    CHECK(pde.o == -1.0);
    CHECK(pde.p == 3);
    CHECK(pde.initial(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(pde.boundary_left(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(pde.boundary_right(0.0) == doctest::Approx(pde.initial(1.0)).epsilon(1e-15));
}

TEST_CASE("allen-cahn exact solution values") {
    CHECK(exact_allen_cahn(0.0, 0.0) == -0.5);
    // tanh oracle: -1/2 + 1/2 tanh(0.3536)
    CHECK(exact_allen_cahn(1.0, 0.0) ==
          doctest::Approx(-0.5 + 0.5 * std::tanh(0.3536)).epsilon(1e-15));
    CHECK(exact_allen_cahn(1.0, 0.0) == doctest::Approx(-0.330215).epsilon(2e-6));

    ParabolicPde pde = allen_cahn_problem();
    for (double t : {0.0, 0.3, 0.77, 1.0})
        CHECK(exact_allen_cahn(0.0, t) == pde.boundary_left(t));
}

TEST_CASE("allen-cahn exact solution is monotone and stays in (-1, 0)") {
    for (int i = 0; i <= 20; ++i) {
        double x = i / 20.0;
        for (int j = 0; j + 1 <= 20; ++j) {
            double t = j / 20.0;
            double u = exact_allen_cahn(x, t);
            CHECK(u > -1.0);
            CHECK(u < 0.0);
            CHECK(exact_allen_cahn(x, t + 0.05) < u);                  // decreasing in t
            if (i < 20) CHECK(exact_allen_cahn(x + 0.05, t) > u);      // increasing in x
        }
    }
}

TEST_CASE("residual at the equilibria") {
    ParabolicPde nws = nws_problem({0.1});
    ad::Jet4 u_eq{2.0 / 3.0, 0, 0, 0};
    CHECK(std::abs(residual(nws, u_eq, 0.5, 0.5)) <= 1e-15);

    ParabolicPde ac = allen_cahn_problem();
    ad::Jet4 one{1.0, 0, 0, 0};
    CHECK(residual(ac, one, 0.5, 0.5) == 0.0);

    ad::Jet4 half{0.5, 0, 0, 0};
    CHECK(residual(ac, half, 0.5, 0.5) == doctest::Approx(-0.375).epsilon(1e-15));
}

TEST_CASE("residual rejects non-finite jets") {
    ParabolicPde pde = nws_problem({0.1});
    ad::Jet4 bad{std::nan(""), 0, 0, 0};
    CHECK_THROWS_AS(residual(pde, bad, 0.0, 0.0), NumericError);
}

TEST_CASE("a source-term callback works on the value route only") {
    ParabolicPde pde = nws_problem({0.1});
    pde.eta = [](double x, double t, double u, double ux) { return x + t + u + ux; };
    ad::Jet4 u{0.2, 0.3, 0.4, 0.5};
    // u_t - m u_xx - n u - o u^2 - eta
    double expect = 0.3 - 0.5 - 2.0 * 0.2 + 3.0 * 0.04 - (0.1 + 0.7 + 0.2 + 0.4);
    CHECK(residual(pde, u, 0.1, 0.7) == doctest::Approx(expect).epsilon(1e-15));

    ad::Tape tape;
    ad::Jet<ad::Var> uv{tape.leaf(0.2), tape.constant(0.3), tape.constant(0.4),
                        tape.constant(0.5)};
    CHECK_THROWS_AS(residual(pde, uv, 0.1, 0.7), UsageError);
}

TEST_CASE("exact-solution residual probes") {
    ParabolicPde nws = nws_problem({0.1});
    auto pts = random_domain_points(nws, 1000, 77);
    CHECK(exact_residual_probe(nws, pts) <= 1e-10);

    ParabolicPde ac = allen_cahn_problem();
    auto pts2 = random_domain_points(ac, 1000, 77);
    double worst = exact_residual_probe(ac, pts2);
    // the printed wave number 0.3536 leaves |k^2 - 1/8| * max|v(1-v^2)| of
    // intrinsic residual, about 1.3e-5
    CHECK(worst <= 5e-5);
    CHECK(worst >= 1e-6);
}

TEST_CASE("probe of a constant zero solution on a zero-coefficient pde") {
    ParabolicPde pde;
    pde.name = "zero";
    pde.m = pde.n = pde.o = 0.0;
    pde.p = 2;
    pde.a = 0.0;
    pde.b = 1.0;
    pde.t_final = 1.0;
    pde.initial = [](double) { return 0.0; };
    pde.boundary_left = [](double) { return 0.0; };
    pde.boundary_right = [](double) { return 0.0; };
    pde.exact = [](double, double) { return 0.0; };
    pde.exact_jet = [](const ad::Jet4&, const ad::Jet4&) { return ad::Jet4{0, 0, 0, 0}; };
    auto pts = random_domain_points(pde, 100, 3);
    CHECK(exact_residual_probe(pde, pts) == 0.0);
}

TEST_CASE("probe without an exact solution is a usage error") {
    ParabolicPde pde = nws_problem({0.1});
    pde.exact_jet = nullptr;
    auto pts = random_domain_points(pde, 10, 3);
    CHECK_THROWS_AS(exact_residual_probe(pde, pts), UsageError);
}

TEST_CASE("corner-compatibility validation") {
    ParabolicPde pde = nws_problem({0.1});
    pde.initial = [](double) { return 0.25; }; // breaks f(a) = g(0)
    pde.exact = nullptr;
    pde.exact_jet = nullptr;
    CHECK_THROWS_AS(validate(pde), ConfigError);
}

TEST_CASE("problem names round-trip") {
    CHECK(problem_from_name("nws") == Problem::nws);
    CHECK(problem_from_name("allen-cahn") == Problem::allen_cahn);
    CHECK_THROWS_AS(problem_from_name("heat"), ConfigError);
}
