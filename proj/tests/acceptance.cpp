// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lmm/analysis.hpp"
#include "lmm/integrate.hpp"
#include "lmm/problems.hpp"
#include "lmm/stability.hpp"
#include "lmm/tableau.hpp"

using namespace lmm;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s criterion %2d: %s [%.0f ms]%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                ms, note.c_str());
    if (!ok) ++failures;
}

Rational R(long long n, long long d = 1) { return rational(n, d); }

bool recurrence_bounded(const Tableau& t, int steps, int trials, std::uint64_t seed) {
    const int k = t.steps();
    std::vector<double> alpha(k + 1);
    for (int j = 0; j <= k; ++j) alpha[j] = to_double(t.alphas()[j]);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> y(k);
        for (auto& v : y) v = unit(rng);
        for (int n = 0; n < steps; ++n) {
            double next = 0.0;
            for (int j = 1; j <= k; ++j) next -= alpha[j] * y[k - j];
            if (std::abs(next) > 1e3) return false;
            y.erase(y.begin());
            y.push_back(next);
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "coefficient reproduction (AB2, AB1=FE, AM1=BE)", [] {
        const auto ab2 = adams_bashforth(2);
        if (ab2.betas() != std::vector<Rational>{R(0), R(3, 2), R(-1, 2)}) return false;
        const auto fe = adams_bashforth(1);
        if (fe.alphas() != std::vector<Rational>{R(1), R(-1)}) return false;
        if (fe.betas() != std::vector<Rational>{R(0), R(1)}) return false;
        const auto be = adams_moulton(1);
        return be.betas() == std::vector<Rational>{R(1), R(0)} &&
               be.alphas() == std::vector<Rational>{R(1), R(-1)};
    });

    criterion(2, "closed-form AB weights equal the Lagrange oracle, k = 1..8", [] {
        for (int k = 1; k <= 8; ++k)
            if (adams_bashforth_closed_form(k) != adams_bashforth(k).betas()) return false;
        return true;
    });

    criterion(3, "order theorems: AB/BDF order k, AM order k+1, BE order 1", [] {
        for (int k = 1; k <= 6; ++k) {
            if (order_report(adams_bashforth(k)).order_p != k) return false;
            if (order_report(bdf(k)).order_p != k) return false;
        }
        for (int k = 2; k <= 6; ++k)
            if (order_report(adams_moulton(k)).order_p != k + 1) return false;
        return order_report(adams_moulton(1)).order_p == 1;
    });

    criterion(4, "trapezoid error constant |C_3| = 1/12 (signed -1/12)", [] {
        const auto rep = order_report(adams_moulton(1, true));
        return rep.order_p == 2 && rep.error_constant == R(-1, 12) &&
               abs(rep.error_constant) == R(1, 12);
    });

    criterion(5, "consistency criteria coincide on 1000 random tableaus", [] {
        std::mt19937 rng(123);
        std::uniform_int_distribution<int> k_dist(1, 5);
        std::uniform_int_distribution<long long> num(-6, 6);
        std::uniform_int_distribution<long long> den(1, 4);
        int checked = 0;
        while (checked < 1000) {
            const int k = k_dist(rng);
            std::vector<Rational> alphas(k + 1), betas(k + 1);
            alphas[0] = 1;
            for (int j = 1; j <= k; ++j) alphas[j] = R(num(rng), den(rng));
            for (int j = 0; j <= k; ++j) betas[j] = R(num(rng), den(rng));
            if (alphas[k] == 0 && betas[k] == 0) continue;
            const auto t = custom_tableau(alphas, betas);
            if (consistency_by_sums(t) != consistency_by_polys(t)) return false;
            ++checked;
        }
        return true;
    });

    criterion(6, "0-stability classes, cross-checked by 10000-step recurrences", [] {
        std::vector<Tableau> stable, unstable;
        for (int k = 1; k <= 6; ++k) {
            stable.push_back(adams_bashforth(k));
            stable.push_back(adams_moulton(k));
            const auto b = bdf(k);
            if (zero_stability(b).cls != ZeroStabilityClass::StronglyStable) return false;
            stable.push_back(b);
        }
        for (const auto& t : stable)
            if (zero_stability(t).cls == ZeroStabilityClass::Unstable) return false;
        if (zero_stability(bdf(7)).cls != ZeroStabilityClass::Unstable) return false;
        if (zero_stability(leapfrog()).cls != ZeroStabilityClass::WeaklyStable) return false;
        stable.push_back(leapfrog());
        unstable.push_back(bdf(7));
        for (const auto& t : stable)
            if (!recurrence_bounded(t, 10000, 100, 99)) return false;
        for (const auto& t : unstable)
            if (recurrence_bounded(t, 10000, 100, 99)) return false;
        return true;
    });

    criterion(7, "observed convergence orders within +-0.2 (exact starters)", [] {
        const std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125, 0.00625};
        const auto p = dahlquist(-1.0);
        struct Case {
            Tableau tab;
            double expected;
        };
        const std::vector<Case> cases = {
            {adams_bashforth(1), 1.0}, {adams_bashforth(2), 2.0}, {adams_bashforth(3), 3.0},
            {adams_moulton(1, true), 2.0}, {adams_moulton(2), 3.0},
            {bdf(1), 1.0}, {bdf(2), 2.0}, {bdf(3), 3.0},
        };
        for (const auto& c : cases) {
            const double slope = observed_order(c.tab, p, hs, 1.0, Starter::Exact).slope;
            if (std::abs(slope - c.expected) > 0.2) return false;
        }
        return true;
    });

    criterion(8, "region geometry: FE disc vs analytic, BE left half-plane", [] {
        const Window w{-3.0, 1.0, -2.0, 2.0};
        const auto fe = region_grid_scan(adams_bashforth(1), w, 201, 201);
        const double dx = 4.0 / 200.0, dy = 4.0 / 200.0;
        const double half_diag = 0.5 * std::hypot(dx, dy);
        int disagreements = 0, boundary_cells = 0;
        for (std::size_t i = 0; i < fe.points.size(); ++i) {
            const double dist = std::abs(std::abs(fe.points[i] + Complex(1)) - 1.0);
            const bool analytic = std::abs(fe.points[i] + Complex(1)) <= 1.0;
            if (fe.inside[i] != analytic) ++disagreements;
            if (dist <= half_diag) ++boundary_cells;
        }
        if (disagreements > boundary_cells) return false;

        const auto be = region_grid_scan(adams_moulton(1), w, 201, 201);
        for (std::size_t i = 0; i < be.points.size(); ++i)
            if (be.points[i].real() < 0.0 && !be.inside[i]) return false;
        return true;
    });

    criterion(9, "second barrier: counterexamples for every order > 2, none for BE/trapezoid", [] {
        std::vector<Tableau> high_order;
        for (int k = 3; k <= 6; ++k) {
            high_order.push_back(adams_bashforth(k));
            high_order.push_back(bdf(k));
        }
        for (int k = 2; k <= 6; ++k) high_order.push_back(adams_moulton(k));
        for (const auto& t : high_order) {
            if (order_report(t).order_p <= 2) return false;
            const auto v = is_a_stable_sampled(t, 10000, 1);
            if (v.a_stable_on_sample) return false;
            if (v.counterexample->real() >= 0.0) return false;
        }
        return is_a_stable_sampled(adams_moulton(1), 10000, 1).a_stable_on_sample &&
               is_a_stable_sampled(adams_moulton(1, true), 10000, 1).a_stable_on_sample;
    });

    criterion(10, "stiff decay: one-step ratios at z = -1e6 and sigma-root test", [] {
        SolveConfig cfg;
        cfg.h = 1.0;
        cfg.t_end = 1.0;
        const auto be = solve_fixed_step(adams_moulton(1), dahlquist(-1e6), cfg);
        if (!(std::abs(be.states[1][0]) <= 1e-5)) return false;
        const auto trap = solve_fixed_step(adams_moulton(1, true), dahlquist(-1e6), cfg);
        if (!(std::abs(trap.states[1][0]) >= 0.99)) return false;

        for (int k = 1; k <= 6; ++k) {
            if (!has_stiff_decay(bdf(k))) return false;
            if (has_stiff_decay(adams_bashforth(k))) return false;
        }
        if (!has_stiff_decay(adams_moulton(1))) return false;  // BE
        if (has_stiff_decay(adams_moulton(1, true))) return false;
        for (int k = 2; k <= 6; ++k)
            if (has_stiff_decay(adams_moulton(k))) return false;
        return true;
    });

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
