#pragma once

// 0-stability (root condition on rho), absolute-stability region membership
// via the stability polynomial zeta = rho(xi) - z sigma(xi), boundary locus,
// sampled A-stability falsification, and stiff decay.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmm/analysis.hpp"
#include "lmm/roots.hpp"
#include "lmm/tableau.hpp"

namespace lmm {

/// Tolerance for all |xi| <= 1 comparisons; separates genuine unit-modulus
/// roots (exact for rational tableaus) from rounding.
inline constexpr double kUnitCircleTol = 1e-8;

enum class ZeroStabilityClass { StronglyStable, WeaklyStable, Unstable };

inline const char* zero_stability_name(ZeroStabilityClass c) {
    switch (c) {
        case ZeroStabilityClass::StronglyStable: return "strongly_stable";
        case ZeroStabilityClass::WeaklyStable: return "weakly_stable";
        default: return "unstable";
    }
}

struct ZeroStabilityVerdict {
    ZeroStabilityClass cls = ZeroStabilityClass::Unstable;
    std::optional<Complex> offending_root;  // set when unstable
    RootSet rho_roots;
};

namespace detail {

inline std::vector<Complex> to_complex_ascending(const Poly<Rational>& p) {
    std::vector<Complex> c(p.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(to_double(p.coeffs()[i]), 0.0);
    return c;
}

}  // namespace detail

/// Root condition on rho: all |xi| <= 1, unit-modulus roots simple.
/// Strongly stable when xi = 1 is the only root with modulus >= 1 - tol.
inline ZeroStabilityVerdict zero_stability(const Tableau& t) {
    const auto rho = characteristic_pair(t).rho;
    ZeroStabilityVerdict v;
    v.rho_roots = poly_roots(detail::to_complex_ascending(rho));
    int near_unit = 0;
    for (std::size_t i = 0; i < v.rho_roots.roots.size(); ++i) {
        const Complex r = v.rho_roots.roots[i];
        const double mod = std::abs(r);
        if (mod > 1.0 + kUnitCircleTol) {
            v.cls = ZeroStabilityClass::Unstable;
            v.offending_root = r;
            return v;
        }
        if (mod >= 1.0 - kUnitCircleTol) {
            if (v.rho_roots.multiplicities[i] >= 2) {
                v.cls = ZeroStabilityClass::Unstable;
                v.offending_root = r;
                return v;
            }
            ++near_unit;
        }
    }
    // consistency guarantees the principal root xi = 1 is among the
    // unit-modulus roots; strong stability means it is the only one
    v.cls = (near_unit <= 1) ? ZeroStabilityClass::StronglyStable
                             : ZeroStabilityClass::WeaklyStable;
    return v;
}

/// Ascending coefficients of zeta(xi) = rho(xi) - z sigma(xi).
inline std::vector<Complex> stability_polynomial(const Tableau& t, Complex z) {
    const auto [rho, sigma] = characteristic_pair(t);
    const int k = t.steps();
    std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex(0));
    for (std::size_t i = 0; i < rho.coeffs().size(); ++i) c[i] += to_double(rho.coeffs()[i]);
    for (std::size_t i = 0; i < sigma.coeffs().size(); ++i)
        c[i] -= z * Complex(to_double(sigma.coeffs()[i]), 0.0);
    return c;
}

/// True iff every root of zeta has modulus <= 1 + tol and near-unit-circle
/// roots are simple. A vanishing leading coefficient lowers the degree; the
/// lost root is at infinity, i.e. outside the unit disc.
inline bool in_stability_region(const Tableau& t, Complex z) {
    std::vector<Complex> c = stability_polynomial(t, z);
    double max_coeff = 0.0;
    for (const auto& v : c) max_coeff = std::max(max_coeff, std::abs(v));
    bool degree_dropped = false;
    while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * max_coeff) {
        c.pop_back();
        degree_dropped = true;
    }
    if (degree_dropped) return false;
    if (c.size() < 2) return true;  // constant nonzero zeta, no roots
    const RootSet rs = poly_roots(c);
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        const double mod = std::abs(rs.roots[i]);
        if (mod > 1.0 + kUnitCircleTol) return false;
        if (mod >= 1.0 - kUnitCircleTol && rs.multiplicities[i] >= 2) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Boundary locus

struct LocusPoint {
    double theta = 0.0;
    Complex z;
    bool is_pole = false;
};

/// z(theta) = rho(e^{i theta}) / sigma(e^{i theta}) on a uniform theta grid
/// over [0, 2 pi). Samples with |sigma| < 1e-12 are emitted as poles.
inline std::vector<LocusPoint> boundary_locus(const Tableau& t, int n_samples) {
    if (n_samples < 8) throw std::domain_error("boundary_locus: need n_samples >= 8");
    const auto [rho, sigma] = characteristic_pair(t);
    if (sigma.is_zero())
        throw std::domain_error("boundary_locus: sigma is identically zero, locus undefined");
    const auto rho_c = detail::to_complex_ascending(rho);
    const auto sigma_c = detail::to_complex_ascending(sigma);
    std::vector<LocusPoint> out;
    out.reserve(n_samples);
    for (int m = 0; m < n_samples; ++m) {
        LocusPoint p;
        p.theta = 2.0 * M_PI * m / n_samples;
        const Complex xi(std::cos(p.theta), std::sin(p.theta));
        const Complex s = detail::horner(sigma_c, xi);
        if (std::abs(s) < 1e-12) {
            p.is_pole = true;
        } else {
            p.z = detail::horner(rho_c, xi) / s;
        }
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Region scan

struct Window {
    double re_min, re_max, im_min, im_max;
};

struct RegionSample {
    Window window{};
    int nx = 0, ny = 0;
    std::vector<Complex> points;  // row-major, im varies slowest
    std::vector<bool> inside;
};

/// Dense membership scan over the window, endpoints included.
inline RegionSample region_grid_scan(const Tableau& t, const Window& w, int nx, int ny) {
    if (nx < 2 || ny < 2 || w.re_max <= w.re_min || w.im_max <= w.im_min)
        throw std::domain_error("region_grid_scan: empty window or resolution < 2");
    RegionSample s;
    s.window = w;
    s.nx = nx;
    s.ny = ny;
    s.points.reserve(static_cast<std::size_t>(nx) * ny);
    s.inside.reserve(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double im = w.im_min + (w.im_max - w.im_min) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double re = w.re_min + (w.re_max - w.re_min) * ix / (nx - 1);
            const Complex z(re, im);
            s.points.push_back(z);
            s.inside.push_back(in_stability_region(t, z));
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// A-stability (sampled falsifier) and stiff decay

struct AStabilityVerdict {
    bool a_stable_on_sample = true;
    std::optional<Complex> counterexample;
};

/// Samples the open left half-plane on a log-radial grid (|z| from 1e-3 to
/// 1e6, with angles hugging the imaginary axis to catch thin exclusion
/// wedges) plus pseudorandom points. Falsifier only: "A-stable on sample"
/// certifies nothing.
inline AStabilityVerdict is_a_stable_sampled(const Tableau& t, int sample_count,
                                             std::uint64_t seed = 0) {
    if (sample_count < 100)
        throw std::domain_error("is_a_stable_sampled: need sample_count >= 100");
    AStabilityVerdict v;
    auto check = [&](Complex z) {
        if (!v.counterexample && !in_stability_region(t, z)) {
            v.a_stable_on_sample = false;
            v.counterexample = z;
        }
        return v.counterexample.has_value();
    };

    // deterministic grid: offsets from the imaginary axis in radians
    const double deltas[] = {1e-3, 3e-3, 0.01, 0.03, 0.06, 0.1, 0.2,
                             0.4,  0.7,  1.0,  1.3,  M_PI / 2};
    std::vector<double> angles;
    for (double d : deltas) {
        angles.push_back(M_PI / 2 + d);
        if (d < M_PI / 2) angles.push_back(3 * M_PI / 2 - d);
    }
    const int grid_budget = sample_count / 2;
    const int n_radii = std::max<int>(8, grid_budget / static_cast<int>(angles.size()));
    int used = 0;
    for (int ir = 0; ir < n_radii && !v.counterexample; ++ir) {
        const double r = std::pow(10.0, -3.0 + 9.0 * ir / (n_radii - 1));
        for (double phi : angles) {
            ++used;
            if (check(r * Complex(std::cos(phi), std::sin(phi)))) break;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
    for (int i = used; i < sample_count && !v.counterexample; ++i) {
        const double phi = M_PI / 2 + M_PI * unit(rng);
        const double r = std::pow(10.0, -3.0 + 9.0 * unit(rng));
        check(r * Complex(std::cos(phi), std::sin(phi)));
    }
    return v;
}

/// Stiff decay: as z -> -infty the roots of zeta approach the roots of
/// sigma, so the step amplification vanishes iff every root of sigma lies
/// strictly inside the unit disc. Explicit schemes never qualify.
inline bool has_stiff_decay(const Tableau& t) {
    if (t.is_explicit()) return false;
    const auto sigma = characteristic_pair(t).sigma;
    const RootSet rs = poly_roots(detail::to_complex_ascending(sigma));
    for (const auto& r : rs.roots)
        if (std::abs(r) >= 1.0 - kUnitCircleTol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Text output

inline std::string format_zero_stability(const ZeroStabilityVerdict& v) {
    std::ostringstream out;
    out << "class=" << zero_stability_name(v.cls);
    if (v.offending_root) {
        out.precision(17);
        out << " root=" << v.offending_root->real();
        out << (v.offending_root->imag() < 0 ? "" : "+") << v.offending_root->imag() << "i";
    }
    return out.str();
}

}  // namespace lmm
