#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pinn/csv.hpp"
#include "pinn/sampling.hpp"

using namespace pinn;

TEST_CASE("published point counts are honored") {
    ParabolicPde nws = nws_problem({0.1});
    SampleSet s1 = sample_uniform(nws, 250, 250, 10000, 1);
    CHECK(s1.initial.size() == 250);
    CHECK(s1.boundary.size() == 250);
    CHECK(s1.collocation.size() == 10000);

    ParabolicPde ac = allen_cahn_problem();
    SampleSet s2 = sample_uniform(ac, 500, 500, 10000, 1);
    CHECK(s2.initial.size() == 500);
    CHECK(s2.boundary.size() == 500);
    CHECK(s2.collocation.size() == 10000);
}

TEST_CASE("sample invariants hold for every point") {
    ParabolicPde pde = allen_cahn_problem();
    SampleSet set = sample_uniform(pde, 100, 64, 500, 9);
    for (const auto& p : set.initial) {
        CHECK(p.t == 0.0);
        CHECK(p.x >= pde.a);
        CHECK(p.x <= pde.b);
        CHECK(p.target == pde.initial(p.x));
    }
    std::size_t left = 0;
    for (const auto& p : set.boundary) {
        CHECK((p.x == pde.a || p.x == pde.b));
        CHECK(p.t >= 0.0);
        CHECK(p.t <= pde.t_final);
        if (p.x == pde.a) {
            ++left;
            CHECK(p.target == pde.boundary_left(p.t));
        } else {
            CHECK(p.target == pde.boundary_right(p.t));
        }
    }
    CHECK(left == 32); // even split
    for (const auto& [t, x] : set.collocation) {
        CHECK(t > 0.0);
        CHECK(t < pde.t_final);
        CHECK(x > pde.a);
        CHECK(x < pde.b);
    }
}

TEST_CASE("identical arguments give bitwise-identical sample sets") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet a = sample_uniform(pde, 50, 20, 200, 1234);
    SampleSet b = sample_uniform(pde, 50, 20, 200, 1234);
    SampleSet c = sample_uniform(pde, 50, 20, 200, 1235);
    bool same = true;
    for (std::size_t i = 0; i < a.collocation.size(); ++i)
        same = same && a.collocation[i] == b.collocation[i];
    for (std::size_t i = 0; i < a.initial.size(); ++i)
        same = same && a.initial[i].x == b.initial[i].x;
    CHECK(same);
    bool differs = false;
    for (std::size_t i = 0; i < a.collocation.size(); ++i)
        differs = differs || a.collocation[i] != c.collocation[i];
    CHECK(differs);
}

TEST_CASE("empirical mean of collocation x sits near the midpoint") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet set = sample_uniform(pde, 2, 2, 10000, 2718);
    double mean = 0.0;
    for (const auto& [t, x] : set.collocation) mean += x;
    mean /= static_cast<double>(set.collocation.size());
    CHECK(std::abs(mean - 0.5) <= 0.02);
}

TEST_CASE("count and parity preconditions") {
    ParabolicPde pde = nws_problem({0.1});
    CHECK_THROWS_AS(sample_uniform(pde, 0, 2, 10, 1), ConfigError);
    CHECK_THROWS_AS(sample_uniform(pde, 1, 3, 10, 1), ConfigError);
}

TEST_CASE("csv dump has the documented columns") {
    ParabolicPde pde = nws_problem({0.1});
    SampleSet set = sample_uniform(pde, 4, 2, 3, 7);
    auto path = std::filesystem::temp_directory_path() / "pinn_samples_test.csv";
    dump_csv(set, path);
    CsvFile csv = read_csv(path);
    REQUIRE(csv.header == std::vector<std::string>{"kind", "t", "x", "target"});
    CHECK(csv.rows.size() == 4 + 2 + 3);
    CHECK(csv.rows[0][0] == "initial");
    CHECK(parse_double(csv.rows[0][2]) == set.initial[0].x);
    CHECK(csv.rows.back()[0] == "collocation");
    CHECK(csv.rows.back()[3].empty());
}

TEST_CASE("grid h = dt = 0.004 has 251 x 251 points") {
    ParabolicPde pde = nws_problem({0.1});
    EvalGrid grid = make_grid(0.004, 0.004, pde);
    CHECK(grid.xs.size() == 251);
    CHECK(grid.ts.size() == 251);
    CHECK(grid.xs.front() == 0.0);
    CHECK(grid.xs.back() == 1.0);
    CHECK(grid.ts.back() == 1.0);
    // interior points are exactly a + i*h
    CHECK(grid.xs[100] == 100 * 0.004);
}

TEST_CASE("grid for the second problem's table: h=0.1, dt=0.001, t<=0.01") {
    ParabolicPde pde = allen_cahn_problem();
    EvalGrid grid = make_grid(0.1, 0.001, pde, 0.01);
    REQUIRE(grid.xs.size() == 11);
    REQUIRE(grid.ts.size() == 11);
    CHECK(grid.xs[3] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(grid.ts[1] == 0.001);
    CHECK(grid.ts.back() == 0.01);
}

TEST_CASE("unit step gives the two endpoints") {
    ParabolicPde pde = nws_problem({0.1});
    EvalGrid grid = make_grid(1.0, 1.0, pde);
    CHECK(grid.xs == std::vector<double>{0.0, 1.0});
    CHECK(grid.ts == std::vector<double>{0.0, 1.0});
}

TEST_CASE("grid endpoints carry no floating drift") {
    ParabolicPde pde = nws_problem({0.1});
    for (double h : {0.004, 0.001, 0.1, 0.25}) {
        EvalGrid grid = make_grid(h, h, pde);
        CHECK(grid.xs.front() == 0.0);
        CHECK(std::abs(grid.xs.back() - 1.0) <= 1e-12);
        CHECK(std::abs(grid.ts.back() - 1.0) <= 1e-12);
    }
}

TEST_CASE("grid step preconditions") {
    ParabolicPde pde = nws_problem({0.1});
    CHECK_THROWS_AS(make_grid(0.0, 0.1, pde), ConfigError);
    CHECK_THROWS_AS(make_grid(0.1, -1.0, pde), ConfigError);
    CHECK_THROWS_AS(make_grid(1.5, 0.1, pde), ConfigError);
}
