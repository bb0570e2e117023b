#pragma once

// Polynomial root finding for the modest degrees (<= 13) that arise from
// characteristic and stability polynomials. Aberth-Ehrlich simultaneous
// iteration, with a companion-matrix eigenvalue fallback on non-convergence.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lmm {

using Complex = std::complex<double>;

struct RootSet {
    std::vector<Complex> roots;
    std::vector<int> multiplicities;
};

namespace detail {

inline Complex horner(const std::vector<Complex>& c, Complex x) {
    Complex acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
    const std::size_t n = c.size() - 1;  // degree
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<Complex> roots(n);
    for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(static_cast<long>(i));
    return roots;
}

inline std::vector<Complex> aberth_roots(const std::vector<Complex>& c, int max_iter,
                                         bool& converged) {
    const std::size_t n = c.size() - 1;
    std::vector<Complex> d(n);
    for (std::size_t i = 1; i <= n; ++i) d[i - 1] = c[i] * static_cast<double>(i);
    // initial guesses on a circle of the Cauchy-bound radius, irrational angle step
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i] / c[n]));
    radius = 1.0 + radius;
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) + 0.4;
        z[i] = radius * Complex(std::cos(angle), std::sin(angle));
    }
    converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex p = horner(c, z[i]);
            const Complex dp = horner(d, z[i]);
            if (p == Complex(0)) continue;
            Complex ratio = (dp == Complex(0)) ? Complex(0) : p / dp;
            Complex repulsion = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            Complex denom = Complex(1) - ratio * repulsion;
            Complex step = (denom == Complex(0)) ? ratio : ratio / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (max_step < 1e-14) {
            converged = true;
            break;
        }
    }
    return z;
}

}  // namespace detail

/// All roots of the polynomial with ascending coefficients, multiplicities
/// assigned by clustering within the given radius. Residual requirement:
/// |p(r)| <= residual_tol * max|coeff| * max(1, |r|)^deg.
inline RootSet poly_roots(const std::vector<Complex>& coefficients,
                          double residual_tol = 1e-10, double cluster_radius = 1e-7,
                          int max_iter = 200) {
    if (coefficients.size() < 2)
        throw std::domain_error("poly_roots: degree must be >= 1");
    if (coefficients.back() == Complex(0))
        throw std::domain_error("poly_roots: leading coefficient must be nonzero");
    const std::size_t deg = coefficients.size() - 1;

    bool converged = false;
    std::vector<Complex> roots = detail::aberth_roots(coefficients, max_iter, converged);

    double max_coeff = 0.0;
    for (const auto& c : coefficients) max_coeff = std::max(max_coeff, std::abs(c));
    auto residual_ok = [&](const std::vector<Complex>& rs) {
        for (const auto& r : rs) {
            const double scale =
                max_coeff * std::pow(std::max(1.0, std::abs(r)), static_cast<double>(deg));
            if (std::abs(detail::horner(coefficients, r)) > residual_tol * scale) return false;
        }
        return true;
    };

    if (!converged || !residual_ok(roots)) {
        roots = detail::companion_roots(coefficients);
        if (!residual_ok(roots))
            throw std::runtime_error(
                "poly_roots: residual tolerance not met after Aberth and companion-matrix "
                "attempts (degree " + std::to_string(deg) + ")");
    }

    // cluster into multiple roots
    RootSet out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex centroid = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_radius) {
                centroid += roots[j];
                ++count;
                used[j] = true;
            }
        }
        out.roots.push_back(centroid / static_cast<double>(count));
        out.multiplicities.push_back(count);
    }
    return out;
}

}  // namespace lmm
