#pragma once

// Built-in initial value problems with exact solutions.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmm/integrate.hpp"

namespace lmm {

inline constexpr double kStiffnessThreshold = 1e3;

/// Test equation y' = lambda y, y0 = 1, exact e^{lambda t}. A complex lambda
/// is represented component-wise as the 2-dimensional real system (Re, Im).
inline IVProblem dahlquist(std::complex<double> lambda) {
    IVProblem p;
    p.name = "dahlquist";
    p.t0 = 0.0;
    p.stiff = std::abs(lambda) >= kStiffnessThreshold;
    if (lambda.imag() == 0.0) {
        const double lam = lambda.real();
        p.dimension = 1;
        p.y0 = {1.0};
        p.f = [lam](double, const Vec& y) { return Vec{lam * y[0]}; };
        p.jacobian = [lam](double, const Vec&) {
            Eigen::MatrixXd j(1, 1);
            j(0, 0) = lam;
            return j;
        };
        p.exact = [lam](double t) { return Vec{std::exp(lam * t)}; };
    } else {
        p.dimension = 2;
        p.y0 = {1.0, 0.0};
        const double a = lambda.real(), b = lambda.imag();
        p.f = [a, b](double, const Vec& y) { return Vec{a * y[0] - b * y[1], b * y[0] + a * y[1]}; };
        p.jacobian = [a, b](double, const Vec&) {
            Eigen::MatrixXd j(2, 2);
            j << a, -b, b, a;
            return j;
        };
        p.exact = [lambda](double t) {
            const auto v = std::exp(lambda * t);
            return Vec{v.real(), v.imag()};
        };
    }
    return p;
}

/// y' = q'(t) with q(t) = sum_{m=0..degree} t^m/(m+1) (degree 0 uses q = t
/// so the right-hand side is not identically zero). Exactness oracle: a
/// method of order p reproduces q exactly when degree <= p.
inline IVProblem polynomial_problem(int degree) {
    if (degree < 0 || degree > 10)
        throw std::domain_error("polynomial_problem: degree must be in [0, 10]");
    std::vector<double> q(degree + 1, 0.0);  // ascending coefficients
    if (degree == 0) {
        q = {0.0, 1.0};  // q(t) = t
    } else {
        q.assign(degree + 1, 0.0);
        for (int m = 0; m <= degree; ++m) q[m] = 1.0 / (m + 1);
    }
    IVProblem p;
    p.name = "polynomial";
    p.dimension = 1;
    p.t0 = 0.0;
    auto eval = [](const std::vector<double>& c, double t) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    };
    std::vector<double> dq;
    for (std::size_t m = 1; m < q.size(); ++m) dq.push_back(q[m] * static_cast<double>(m));
    if (dq.empty()) dq.push_back(0.0);
    p.y0 = {eval(q, 0.0)};
    p.f = [dq, eval](double t, const Vec&) { return Vec{eval(dq, t)}; };
    p.jacobian = [](double, const Vec&) { return Eigen::MatrixXd::Zero(1, 1).eval(); };
    p.exact = [q, eval](double t) { return Vec{eval(q, t)}; };
    return p;
}

/// Prothero-Robinson-style relaxation onto cos t:
/// y' = lambda (y - cos t) - sin t, exact = cos t + (y0 - 1) e^{lambda t}.
inline IVProblem stiff_relaxation(double lambda, double y0 = 1.0) {
    if (lambda >= 0.0) throw std::domain_error("stiff_relaxation: lambda must be negative");
    IVProblem p;
    p.name = "stiff_relaxation";
    p.dimension = 1;
    p.t0 = 0.0;
    p.y0 = {y0};
    p.stiff = true;
    p.f = [lambda](double t, const Vec& y) {
        return Vec{lambda * (y[0] - std::cos(t)) - std::sin(t)};
    };
    p.jacobian = [lambda](double, const Vec&) {
        Eigen::MatrixXd j(1, 1);
        j(0, 0) = lambda;
        return j;
    };
    const double c = y0 - 1.0;
    p.exact = [lambda, c](double t) { return Vec{std::cos(t) + c * std::exp(lambda * t)}; };
    return p;
}

// ---------------------------------------------------------------------------
// Catalog

using ProblemParams = std::map<std::string, double>;

struct ProblemCatalogEntry {
    std::string name;
    std::string description;
    std::function<IVProblem(const ProblemParams&)> builder;
};

namespace detail {
inline double param_or(const ProblemParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}
}  // namespace detail

inline const std::vector<ProblemCatalogEntry>& problem_catalog() {
    static const std::vector<ProblemCatalogEntry> entries = {
        {"dahlquist", "y' = lambda*y (params: lambda, default -1)",
         [](const ProblemParams& p) {
             return dahlquist(std::complex<double>(detail::param_or(p, "lambda", -1.0),
                                                   detail::param_or(p, "lambda_im", 0.0)));
         }},
        {"polynomial", "y' = q'(t), q of given degree (params: degree, default 3)",
         [](const ProblemParams& p) {
             return polynomial_problem(static_cast<int>(detail::param_or(p, "degree", 3.0)));
         }},
        {"stiff_relaxation",
         "y' = lambda*(y - cos t) - sin t (params: lambda, default -1e4; y0, default 1)",
         [](const ProblemParams& p) {
             return stiff_relaxation(detail::param_or(p, "lambda", -1e4),
                                     detail::param_or(p, "y0", 1.0));
         }},
    };
    return entries;
}

inline IVProblem build_problem(const std::string& name, const ProblemParams& params = {}) {
    for (const auto& e : problem_catalog())
        if (e.name == name) return e.builder(params);
    throw std::domain_error("unknown problem '" + name + "'");
}

/// Finite-difference check that a problem's exact solution satisfies its
/// ODE: |(exact(t+d) - exact(t-d))/(2d) - f(t, exact(t))| <= tol at the
/// sampled points.
inline bool exact_solution_satisfies_ode(const IVProblem& p, double t_lo, double t_hi,
                                         int n_points = 100, double delta = 1e-6,
                                         double tol = 1e-6) {
    if (!p.exact) return true;
    for (int i = 0; i < n_points; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (n_points - 1);
        const Vec yp = p.exact(t + delta), ym = p.exact(t - delta);
        const Vec fv = p.f(t, p.exact(t));
        for (int c = 0; c < p.dimension; ++c)
            if (std::abs((yp[c] - ym[c]) / (2.0 * delta) - fv[c]) > tol) return false;
    }
    return true;
}

}  // namespace lmm
