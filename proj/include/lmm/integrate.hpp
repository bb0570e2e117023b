#pragma once

// Fixed-step integration of initial value problems with an arbitrary
// tableau: direct stepping for explicit schemes, Newton-solved steps for
// implicit ones, RK4 bootstrapping of starting values, and an observed
// convergence-order harness.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmm/analysis.hpp"
#include "lmm/tableau.hpp"

namespace lmm {

using Vec = std::vector<double>;
using Rhs = std::function<Vec(double, const Vec&)>;
using JacobianFn = std::function<Eigen::MatrixXd(double, const Vec&)>;
using ExactFn = std::function<Vec(double)>;

struct IVProblem {
    int dimension = 1;
    Rhs f;
    JacobianFn jacobian;  // optional; finite differences when absent
    Vec y0;
    double t0 = 0.0;
    ExactFn exact;  // optional reference solution
    std::string name = "custom";
    bool stiff = false;
};

enum class Starter { Exact, RK4 };

struct SolveConfig {
    double h = 0.1;
    double t_end = 1.0;
    Starter starter = Starter::RK4;
    double newton_tol = 1e-12;
    int newton_max_iter = 25;
};

inline constexpr double kDivergenceCutoff = 1e12;
inline constexpr std::int64_t kMaxSteps = 10'000'000;

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    Starter starter_used = Starter::RK4;
    std::vector<int> newton_iterations;  // per implicit step
    bool diverged = false;
};

struct StepError : std::runtime_error {
    StepError(std::int64_t step, double residual, const std::string& what)
        : std::runtime_error("step " + std::to_string(step) + ": " + what +
                             " (last residual " + std::to_string(residual) + ")"),
          step_index(step), last_residual(residual) {}
    std::int64_t step_index;
    double last_residual;
};

namespace detail {

inline double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline Vec rk4_step(const Rhs& f, double t, const Vec& y, double h) {
    const std::size_t d = y.size();
    const Vec k1 = f(t, y);
    Vec tmp(d);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const Vec k2 = f(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const Vec k3 = f(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
    const Vec k4 = f(t + h, tmp);
    Vec out(d);
    for (std::size_t i = 0; i < d; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

inline Eigen::MatrixXd fd_jacobian(const Rhs& f, double t, const Vec& y) {
    const int d = static_cast<int>(y.size());
    const Vec f0 = f(t, y);
    Eigen::MatrixXd jac(d, d);
    for (int c = 0; c < d; ++c) {
        const double eps = 1e-8 * (1.0 + std::abs(y[c]));
        Vec yp = y;
        yp[c] += eps;
        const Vec fp = f(t, yp);
        for (int r = 0; r < d; ++r) jac(r, c) = (fp[r] - f0[r]) / eps;
    }
    return jac;
}

}  // namespace detail

/// Classical RK4 starting values y_1..y_count at t0 + i*h. Each step may be
/// internally substepped (substeps > 1) so the starter's error stays below
/// the asymptotic order of high-order tableaus at desk-scale h.
inline std::vector<Vec> rk4_starter(const IVProblem& p, double h, int count, int substeps = 1) {
    if (count < 0 || count > 11) throw std::domain_error("rk4_starter: count must be in [0, 11]");
    if (substeps < 1) throw std::domain_error("rk4_starter: substeps must be >= 1");
    std::vector<Vec> out;
    out.reserve(count);
    Vec y = p.y0;
    double t = p.t0;
    for (int i = 0; i < count; ++i) {
        const double hs = h / substeps;
        for (int s = 0; s < substeps; ++s) {
            y = detail::rk4_step(p.f, t, y, hs);
            t += hs;
        }
        t = p.t0 + (i + 1) * h;  // avoid drift
        out.push_back(y);
    }
    return out;
}

/// One implicit step: solve y_n + sum_{j>=1} alpha_j y_{n-j}
/// - h sum_j beta_j f_{n-j} = 0 for y_n by Newton iteration. history is
/// ordered most-recent-first (y_{n-1}, y_{n-2}, ...), holding k states.
/// Returns the accepted state; records the iteration count when asked.
inline Vec newton_solve_step(const Tableau& tab, const IVProblem& p,
                             const std::vector<Vec>& history, double t_n,
                             const SolveConfig& cfg, std::int64_t step_index = 0,
                             int* iterations_out = nullptr) {
    const int k = tab.steps();
    if (tab.is_explicit()) throw std::invalid_argument("newton_solve_step: tableau is explicit");
    if (static_cast<int>(history.size()) < k)
        throw std::invalid_argument("newton_solve_step: history must hold k states");
    const int d = p.dimension;
    const double h = cfg.h;
    const double beta0 = to_double(tab.betas()[0]);

    // constant part: sum_{j>=1} alpha_j y_{n-j} - h sum_{j>=1} beta_j f_{n-j}
    Vec fixed(d, 0.0);
    for (int j = 1; j <= k; ++j) {
        const double aj = to_double(tab.alphas()[j]);
        const double bj = to_double(tab.betas()[j]);
        const Vec& yj = history[j - 1];
        if (aj != 0.0)
            for (int i = 0; i < d; ++i) fixed[i] += aj * yj[i];
        if (bj != 0.0) {
            const Vec fj = p.f(t_n - j * h, yj);
            for (int i = 0; i < d; ++i) fixed[i] -= h * bj * fj[i];
        }
    }

    // initial guess: explicit predictor (drop the beta_0 term)
    Vec y(d);
    for (int i = 0; i < d; ++i) y[i] = -fixed[i];

    auto residual = [&](const Vec& yn) {
        const Vec fn = p.f(t_n, yn);
        Vec r(d);
        for (int i = 0; i < d; ++i) r[i] = yn[i] + fixed[i] - h * beta0 * fn[i];
        return r;
    };

    Vec r = residual(y);
    double rnorm = detail::max_abs(r);
    int iter = 0;
    while (rnorm > cfg.newton_tol) {
        if (iter >= cfg.newton_max_iter)
            throw StepError(step_index, rnorm, "Newton iteration cap reached");
        const Eigen::MatrixXd jac_f =
            p.jacobian ? p.jacobian(t_n, y) : detail::fd_jacobian(p.f, t_n, y);
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d) - h * beta0 * jac_f;
        Eigen::VectorXd rhs(d);
        for (int i = 0; i < d; ++i) rhs(i) = -r[i];
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        if (!lu.isInvertible()) throw StepError(step_index, rnorm, "singular Newton matrix");
        const Eigen::VectorXd delta = lu.solve(rhs);
        for (int i = 0; i < d; ++i) y[i] += delta(i);
        r = residual(y);
        rnorm = detail::max_abs(r);
        ++iter;
    }
    if (iterations_out) *iterations_out = iter;
    return y;
}

/// Fixed-step solve over [t0, t_end]. The k-1 starting values beyond y0 come
/// from the exact solution (when provided and requested) or from RK4
/// bootstrapping, substepped h/4 for tableaus of order > 4. Runs are
/// truncated (not failed) when |y| exceeds the divergence cutoff.
inline Trajectory solve_fixed_step(const Tableau& tab, const IVProblem& p,
                                   const SolveConfig& cfg) {
    if (cfg.h <= 0.0 || cfg.t_end <= p.t0)
        throw std::invalid_argument("solve_fixed_step: need h > 0 and t_end > t0");
    const std::int64_t n_steps = static_cast<std::int64_t>(std::llround((cfg.t_end - p.t0) / cfg.h));
    if (n_steps > kMaxSteps) throw std::invalid_argument("solve_fixed_step: step-count cap exceeded");
    const int k = tab.steps();
    if (n_steps < k)
        throw std::invalid_argument("solve_fixed_step: window shorter than k steps");

    Trajectory traj;
    traj.times.push_back(p.t0);
    traj.states.push_back(p.y0);

    if (cfg.starter == Starter::Exact) {
        if (!p.exact && k > 1)
            throw std::invalid_argument(
                "solve_fixed_step: exact starter requested but no exact solution");
        traj.starter_used = Starter::Exact;
        for (int i = 1; i < k; ++i) {
            traj.times.push_back(p.t0 + i * cfg.h);
            traj.states.push_back(p.exact(p.t0 + i * cfg.h));
        }
    } else {
        traj.starter_used = Starter::RK4;
        const int order = order_report(tab).order_p;
        const int substeps = order > 4 ? 4 : 1;
        const auto start = rk4_starter(p, cfg.h, k - 1, substeps);
        for (int i = 1; i < k; ++i) {
            traj.times.push_back(p.t0 + i * cfg.h);
            traj.states.push_back(start[i - 1]);
        }
    }

    const int d = p.dimension;
    for (std::int64_t n = k; n <= n_steps; ++n) {
        const double t_n = p.t0 + n * cfg.h;
        std::vector<Vec> history(k);
        for (int j = 1; j <= k; ++j) history[j - 1] = traj.states[n - j];

        Vec y_n;
        if (tab.is_explicit()) {
            y_n.assign(d, 0.0);
            for (int j = 1; j <= k; ++j) {
                const double aj = to_double(tab.alphas()[j]);
                const double bj = to_double(tab.betas()[j]);
                if (aj != 0.0)
                    for (int i = 0; i < d; ++i) y_n[i] -= aj * history[j - 1][i];
                if (bj != 0.0) {
                    const Vec fj = p.f(t_n - j * cfg.h, history[j - 1]);
                    for (int i = 0; i < d; ++i) y_n[i] += cfg.h * bj * fj[i];
                }
            }
        } else {
            int iters = 0;
            y_n = newton_solve_step(tab, p, history, t_n, cfg, n, &iters);
            traj.newton_iterations.push_back(iters);
        }

        traj.times.push_back(t_n);
        traj.states.push_back(y_n);
        if (detail::max_abs(y_n) > kDivergenceCutoff) {
            traj.diverged = true;
            break;
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Convergence-order harness

struct ConvergenceReport {
    std::vector<double> h_values;
    std::vector<double> errors;  // global error at t_end
    double slope = 0.0;          // least-squares slope of log(err) vs log(h)
};

/// Global-error slope over a decreasing list of step sizes; requires the
/// problem to carry an exact solution.
inline ConvergenceReport observed_order(const Tableau& tab, const IVProblem& p,
                                        const std::vector<double>& h_list,
                                        double t_end, Starter starter = Starter::Exact) {
    if (!p.exact) throw std::invalid_argument("observed_order: problem has no exact solution");
    if (h_list.size() < 3) throw std::invalid_argument("observed_order: need >= 3 step sizes");
    ConvergenceReport rep;
    for (double h : h_list) {
        SolveConfig cfg;
        cfg.h = h;
        cfg.t_end = t_end;
        cfg.starter = starter;
        const Trajectory traj = solve_fixed_step(tab, p, cfg);
        if (traj.diverged)
            throw std::runtime_error("observed_order: divergent trajectory at h = " +
                                     std::to_string(h));
        const Vec exact = p.exact(traj.times.back());
        double err = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i)
            err = std::max(err, std::abs(traj.states.back()[i] - exact[i]));
        rep.h_values.push_back(h);
        rep.errors.push_back(err);
    }
    // least squares on (log h, log err)
    const std::size_t n = rep.h_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(rep.h_values[i]);
        const double y = std::log(std::max(rep.errors[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

}  // namespace lmm
