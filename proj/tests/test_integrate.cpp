#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lmm/integrate.hpp"
#include "lmm/problems.hpp"
#include "lmm/stability.hpp"
#include "lmm/tableau.hpp"

using namespace lmm;

TEST_CASE("forward Euler single step") {
    const double lambda = -2.0, h = 0.1;
    SolveConfig cfg;
    cfg.h = h;
    cfg.t_end = h;
    cfg.starter = Starter::Exact;
    const auto traj = solve_fixed_step(adams_bashforth(1), dahlquist(lambda), cfg);
    REQUIRE(traj.states.size() == 2);
    CHECK(traj.states[1][0] == Catch::Approx(1.0 + h * lambda).epsilon(1e-15));
}

TEST_CASE("AB2 integrates constant f exactly") {
    IVProblem p;
    p.dimension = 1;
    p.y0 = {3.0};
    p.f = [](double, const Vec&) { return Vec{1.0}; };
    p.exact = [](double t) { return Vec{3.0 + t}; };
    SolveConfig cfg;
    cfg.h = 0.125;
    cfg.t_end = 2.0;
    cfg.starter = Starter::Exact;
    const auto traj = solve_fixed_step(adams_bashforth(2), p, cfg);
    for (std::size_t n = 0; n < traj.times.size(); ++n)
        CHECK(traj.states[n][0] == Catch::Approx(3.0 + traj.times[n]).margin(1e-14));
}

TEST_CASE("backward Euler step matches the closed-form solve") {
    const double lambda = -5.0, h = 0.2;
    SolveConfig cfg;
    cfg.h = h;
    cfg.t_end = h;
    const auto traj = solve_fixed_step(adams_moulton(1), dahlquist(lambda), cfg);
    REQUIRE(traj.states.size() == 2);
    CHECK(traj.states[1][0] == Catch::Approx(1.0 / (1.0 - h * lambda)).epsilon(1e-12));
    // linear residual: Newton converges in one iteration
    REQUIRE(traj.newton_iterations.size() == 1);
    CHECK(traj.newton_iterations[0] == 1);
}

TEST_CASE("trapezoid on y' = -y^2 matches the per-step quadratic root") {
    IVProblem p;
    p.dimension = 1;
    p.y0 = {1.0};
    p.f = [](double, const Vec& y) { return Vec{-y[0] * y[0]}; };
    const double h = 0.1;
    SolveConfig cfg;
    cfg.h = h;
    cfg.t_end = 1.0;
    const auto traj = solve_fixed_step(adams_moulton(1, true), p, cfg);

    // oracle: y_n solves y + (h/2) y^2 = y_prev - (h/2) y_prev^2, take the
    // root continuous in h
    double y_prev = 1.0;
    for (std::size_t n = 1; n < traj.states.size(); ++n) {
        const double rhs = y_prev - 0.5 * h * y_prev * y_prev;
        const double y_exact = (-1.0 + std::sqrt(1.0 + 2.0 * h * rhs)) / h;
        CHECK(traj.states[n][0] == Catch::Approx(y_exact).margin(1e-10));
        y_prev = traj.states[n][0];
    }
}

TEST_CASE("stiff BDF2 Newton stays cheap") {
    SolveConfig cfg;
    cfg.h = 0.1;
    cfg.t_end = 2.0;
    cfg.starter = Starter::Exact;
    const auto traj = solve_fixed_step(bdf(2), dahlquist(-1e4), cfg);
    REQUIRE_FALSE(traj.diverged);
    for (int iters : traj.newton_iterations) CHECK(iters <= 5);
}

TEST_CASE("rk4 starter") {
    CHECK(rk4_starter(dahlquist(1.0), 0.1, 0).empty());

    const auto one = rk4_starter(dahlquist(1.0), 0.1, 1);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0][0] - std::exp(0.1)) < 1e-7);

    // y' = t, exact y = y0 + t^2/2: RK4 reproduces polynomials of degree <= 4
    IVProblem p;
    p.dimension = 1;
    p.y0 = {1.0};
    p.f = [](double t, const Vec&) { return Vec{t}; };
    const auto vals = rk4_starter(p, 0.25, 3);
    for (int i = 0; i < 3; ++i) {
        const double t = 0.25 * (i + 1);
        CHECK(vals[i][0] == Catch::Approx(1.0 + 0.5 * t * t).margin(1e-14));
    }

    CHECK_THROWS_AS(rk4_starter(p, 0.1, 12), std::domain_error);
}

TEST_CASE("newton_solve_step rejects explicit tableaus and short history") {
    SolveConfig cfg;
    CHECK_THROWS_AS(newton_solve_step(adams_bashforth(1), dahlquist(-1.0), {{1.0}}, 0.1, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(newton_solve_step(bdf(2), dahlquist(-1.0), {{1.0}}, 0.1, cfg),
                    std::invalid_argument);
}

TEST_CASE("order-p methods are exact on degree-p polynomial problems") {
    const std::vector<Tableau> tableaus = {adams_bashforth(2), adams_bashforth(3),
                                           adams_moulton(1, true), adams_moulton(2), bdf(3)};
    for (const auto& t : tableaus) {
        const int p = order_report(t).order_p;
        const auto problem = polynomial_problem(p);
        SolveConfig cfg;
        cfg.h = 0.01;
        cfg.t_end = 1.0;
        cfg.starter = Starter::Exact;
        const auto traj = solve_fixed_step(t, problem, cfg);
        for (std::size_t n = 0; n < traj.times.size(); ++n)
            CHECK(std::abs(traj.states[n][0] - problem.exact(traj.times[n])[0]) < 1e-10);
    }
}

TEST_CASE("linearity of the test-equation trajectory") {
    const double c = 3.75;
    auto scaled = dahlquist(-1.0);
    scaled.y0 = {c};
    scaled.exact = nullptr;
    SolveConfig cfg;
    cfg.h = 0.05;
    cfg.t_end = 1.0;
    cfg.starter = Starter::RK4;
    for (const auto& t : {adams_bashforth(3), bdf(2)}) {
        const auto base = solve_fixed_step(t, dahlquist(-1.0), cfg);
        const auto big = solve_fixed_step(t, scaled, cfg);
        for (std::size_t n = 0; n < base.times.size(); ++n)
            CHECK(std::abs(big.states[n][0] - c * base.states[n][0]) <=
                  1e-13 * std::abs(big.states[n][0]));
    }
}

TEST_CASE("trajectories shrink inside the stability region and grow outside") {
    struct Case {
        Tableau tab;
        double z;
        bool stable;
    };
    const std::vector<Case> cases = {
        {adams_bashforth(1), -1.0, true},  {adams_bashforth(1), -3.0, false},
        {adams_bashforth(2), -0.5, true},  {adams_bashforth(2), -1.5, false},
        {bdf(2), -5.0, true},              {adams_moulton(1, true), -2.0, true},
    };
    for (const auto& c : cases) {
        REQUIRE(in_stability_region(c.tab, Complex(c.z)) == c.stable);
        SolveConfig cfg;
        cfg.h = 0.01;
        cfg.t_end = 10.0;  // 1000 steps, z = lambda h
        cfg.starter = Starter::Exact;
        const auto traj = solve_fixed_step(c.tab, dahlquist(c.z / cfg.h), cfg);
        if (c.stable) {
            REQUIRE_FALSE(traj.diverged);
            const std::size_t half = traj.states.size() / 2;
            double first = 0.0, second = 0.0;
            for (std::size_t n = 0; n < traj.states.size(); ++n) {
                const double v = std::abs(traj.states[n][0]);
                (n < half ? first : second) = std::max(n < half ? first : second, v);
            }
            CHECK(second <= first + 1e-9);
        } else {
            const double last = std::abs(traj.states.back()[0]);
            CHECK((traj.diverged || last > 10.0));
        }
    }
}

TEST_CASE("divergence truncates instead of throwing") {
    SolveConfig cfg;
    cfg.h = 0.1;
    cfg.t_end = 100.0;
    cfg.starter = Starter::Exact;
    // z = -3 is far outside the FE disc
    const auto traj = solve_fixed_step(adams_bashforth(1), dahlquist(-30.0), cfg);
    CHECK(traj.diverged);
    CHECK(traj.times.size() < 1001);
    CHECK(std::abs(traj.states.back()[0]) > kDivergenceCutoff);
}

TEST_CASE("stiff decay in action") {
    SolveConfig cfg;
    cfg.h = 1.0;
    cfg.t_end = 1.0;
    const auto be = solve_fixed_step(adams_moulton(1), dahlquist(-1e6), cfg);
    CHECK(std::abs(be.states[1][0]) <= 1e-5);
    const auto trap = solve_fixed_step(adams_moulton(1, true), dahlquist(-1e6), cfg);
    CHECK(std::abs(trap.states[1][0]) >= 0.99);
}

TEST_CASE("observed order recovers the theoretical rates") {
    const std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    const auto p = dahlquist(-1.0);
    CHECK(observed_order(adams_bashforth(1), p, hs, 1.0).slope == Catch::Approx(1.0).margin(0.2));
    CHECK(observed_order(adams_bashforth(3), p, hs, 1.0).slope == Catch::Approx(3.0).margin(0.2));
    CHECK(observed_order(adams_moulton(2), p, hs, 1.0).slope == Catch::Approx(3.0).margin(0.2));

    auto no_exact = dahlquist(-1.0);
    no_exact.exact = nullptr;
    CHECK_THROWS_AS(observed_order(adams_bashforth(1), no_exact, hs, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(observed_order(adams_bashforth(1), p, {0.1, 0.05}, 1.0),
                    std::invalid_argument);
    // divergent run reported as a harness error
    CHECK_THROWS_AS(observed_order(adams_bashforth(1), dahlquist(-1e4), {1.0, 0.5, 0.25}, 50.0),
                    std::runtime_error);
}

TEST_CASE("rk4 starter keeps high-order convergence clean") {
    const std::vector<double> hs = {0.2, 0.1, 0.05, 0.025};
    const auto rep = observed_order(adams_moulton(4), dahlquist(-1.0), hs, 2.0, Starter::RK4);
    CHECK(rep.slope > 4.5);  // order 5 with substepped starter
}
