#pragma once

// Linear multistep method tableaus: the (k, alpha_0..alpha_k, beta_0..beta_k)
// coefficient set of
//
//     y_n = -sum_{j=1..k} alpha_j y_{n-j} + h sum_{j=0..k} beta_j f_{n-j}
//
// normalized so alpha_0 = 1, together with exact synthesis of the
// Adams-Bashforth, Adams-Moulton, and BDF families.

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmm/polynomial.hpp"
#include "lmm/rational.hpp"

namespace lmm {

enum class Family { AdamsBashforth, AdamsMoulton, BDF, Custom };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::AdamsBashforth: return "AB";
        case Family::AdamsMoulton: return "AM";
        case Family::BDF: return "BDF";
        default: return "custom";
    }
}

class Tableau {
public:
    Tableau(std::vector<Rational> alphas, std::vector<Rational> betas,
            Family family = Family::Custom)
        : alphas_(std::move(alphas)), betas_(std::move(betas)), family_(family) {
        if (alphas_.empty() || alphas_.size() != betas_.size())
            throw std::invalid_argument("Tableau: alpha/beta length mismatch");
        if (alphas_[0] != 1)
            throw std::invalid_argument("Tableau: alpha_0 must equal 1");
        if (alphas_.size() < 2)
            throw std::invalid_argument("Tableau: need at least one step (k >= 1)");
        if (alphas_.back() == 0 && betas_.back() == 0)
            throw std::invalid_argument(
                "Tableau: trailing alpha_k and beta_k both zero (k overstated)");
    }

    int steps() const { return static_cast<int>(alphas_.size()) - 1; }
    const std::vector<Rational>& alphas() const { return alphas_; }
    const std::vector<Rational>& betas() const { return betas_; }
    Family family() const { return family_; }

    /// beta_0 = 0 means no dependence on f_n.
    bool is_explicit() const { return betas_[0] == 0; }

    bool operator==(const Tableau& o) const {
        return alphas_ == o.alphas_ && betas_ == o.betas_;
    }

private:
    std::vector<Rational> alphas_;
    std::vector<Rational> betas_;
    Family family_;
};

/// Interpolation nodes given as integer offsets j, meaning t_{n-j}, in units
/// of h. Offsets must be distinct; kept sorted ascending.
struct InterpolationNodeSet {
    std::vector<int> offsets;

    explicit InterpolationNodeSet(std::vector<int> offs) : offsets(std::move(offs)) {
        std::sort(offsets.begin(), offsets.end());
        if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
            throw std::domain_error("InterpolationNodeSet: duplicate node offsets");
    }
};

/// Backward difference del^i y_n, values ordered y_n, y_{n-1}, ...
/// del^0 y_n = y_n; del^i y_n = del^{i-1} y_n - del^{i-1} y_{n-1}.
inline Rational backward_difference(const std::vector<Rational>& values, unsigned i) {
    if (values.size() < i + 1)
        throw std::domain_error("backward_difference: need at least i+1 values");
    std::vector<Rational> work(values.begin(), values.begin() + i + 1);
    for (unsigned level = 0; level < i; ++level)
        for (std::size_t m = 0; m + 1 < work.size() - level; ++m)
            work[m] -= work[m + 1];
    return work[0];
}

/// Exact per-node quadrature weights: for each node offset j, the value of
/// (1/h) * integral over [t_{n-upper}, t_{n-lower}] of the Lagrange basis
/// polynomial associated with t_{n-j}. In units of h, node j sits at x = -j
/// and the interval is [-upper, -lower]. Weights sum to (upper - lower).
inline std::vector<Rational> lagrange_integral_oracle(const InterpolationNodeSet& nodes,
                                                      int lower, int upper) {
    if (lower >= upper)
        throw std::domain_error("lagrange_integral_oracle: need lower < upper");
    using RP = Poly<Rational>;
    std::vector<Rational> weights;
    weights.reserve(nodes.offsets.size());
    for (int j : nodes.offsets) {
        RP basis = RP::constant(1);
        for (int m : nodes.offsets) {
            if (m == j) continue;
            // (x - x_m) / (x_j - x_m) with x_j = -j, x_m = -m
            const Rational scale = Rational(1) / Rational(m - j);
            basis = basis * RP(std::vector<Rational>{Rational(m) * scale, scale});
        }
        weights.push_back(basis.integral(Rational(-upper), Rational(-lower)));
    }
    return weights;
}

namespace detail {
inline void check_step_count(int k, int max_k, const char* what) {
    if (k < 1 || k > max_k)
        throw std::domain_error(std::string(what) + ": k must be in [1, " +
                                std::to_string(max_k) + "], got " + std::to_string(k));
}
}  // namespace detail

/// k-step Adams-Bashforth: y_n = y_{n-1} + h sum_{j=1..k} beta_j f_{n-j},
/// weights from exact integration of the Lagrange interpolant of f through
/// t_{n-1}..t_{n-k} over [t_{n-1}, t_n].
inline Tableau adams_bashforth(int k) {
    detail::check_step_count(k, 12, "adams_bashforth");
    std::vector<int> offs(k);
    for (int j = 0; j < k; ++j) offs[j] = j + 1;
    const auto weights = lagrange_integral_oracle(InterpolationNodeSet(offs), 0, 1);
    std::vector<Rational> alphas(k + 1, Rational(0)), betas(k + 1, Rational(0));
    alphas[0] = 1;
    alphas[1] = -1;
    for (int j = 0; j < k; ++j) betas[j + 1] = weights[j];
    return Tableau(std::move(alphas), std::move(betas), Family::AdamsBashforth);
}

/// Closed-form AB weights: beta_j = (-1)^{j-1} sum_{i=j-1..k-1} C(i,j-1)
/// (-1)^i int_0^1 C(-s,i) ds, with the integrand expanded as the exact
/// degree-i rational polynomial (-s)(-s-1)...(-s-i+1)/i!. Cross-check for
/// the interpolation route, not the production path.
inline std::vector<Rational> adams_bashforth_closed_form(int k) {
    detail::check_step_count(k, 12, "adams_bashforth_closed_form");
    using RP = Poly<Rational>;
    // gamma_i = int_0^1 binom(-s, i) ds
    std::vector<Rational> gamma(k);
    for (int i = 0; i < k; ++i) {
        RP prod = RP::constant(1);
        for (int m = 0; m < i; ++m)
            prod = prod * RP(std::vector<Rational>{Rational(-m), Rational(-1)});
        gamma[i] = prod.integral(0, 1) / factorial(static_cast<unsigned>(i));
    }
    std::vector<Rational> betas(k + 1, Rational(0));
    for (int j = 1; j <= k; ++j) {
        Rational sum = 0;
        for (int i = j - 1; i <= k - 1; ++i) {
            Rational term = binomial(static_cast<unsigned>(i), static_cast<unsigned>(j - 1)) * gamma[i];
            if (i % 2 != 0) term = -term;
            sum += term;
        }
        betas[j] = (j % 2 == 1) ? sum : -sum;
    }
    return betas;
}

/// k-step Adams-Moulton: interpolate f through t_n..t_{n-k} (degree <= k)
/// and integrate over [t_{n-1}, t_n]. For k = 1 the default is Backward
/// Euler (beta_1 = 0); trapezoid_variant selects the implicit trapezoid.
inline Tableau adams_moulton(int k, bool trapezoid_variant = false) {
    detail::check_step_count(k, 12, "adams_moulton");
    if (trapezoid_variant && k != 1)
        throw std::invalid_argument("adams_moulton: trapezoid_variant only applies to k = 1");
    std::vector<Rational> alphas(k + 1, Rational(0)), betas(k + 1, Rational(0));
    alphas[0] = 1;
    alphas[1] = -1;
    if (k == 1 && !trapezoid_variant) {
        // Backward Euler: the k = 1 Adams-Moulton member with beta_1 = 0.
        betas[0] = 1;
    } else {
        std::vector<int> offs(k + 1);
        for (int j = 0; j <= k; ++j) offs[j] = j;
        const auto weights = lagrange_integral_oracle(InterpolationNodeSet(offs), 0, 1);
        for (int j = 0; j <= k; ++j) betas[j] = weights[j];
    }
    return Tableau(std::move(alphas), std::move(betas), Family::AdamsMoulton);
}

/// k-step BDF: expand sum_{i=1..k} (1/i) del^i y_n = h f_n into the general
/// form and renormalize to alpha_0 = 1 (divide through by sum_{i=1..k} 1/i).
/// All beta_j vanish for j > 0.
inline Tableau bdf(int k) {
    detail::check_step_count(k, 8, "bdf");
    // del^i y_n = sum_{m=0..i} (-1)^m C(i,m) y_{n-m}
    std::vector<Rational> a(k + 1, Rational(0));
    for (int i = 1; i <= k; ++i)
        for (int m = 0; m <= i; ++m) {
            Rational c = binomial(static_cast<unsigned>(i), static_cast<unsigned>(m)) / Rational(i);
            if (m % 2 != 0) c = -c;
            a[m] += c;
        }
    const Rational lead = a[0];  // = sum_{i=1..k} 1/i, always positive
    std::vector<Rational> alphas(k + 1), betas(k + 1, Rational(0));
    for (int m = 0; m <= k; ++m) alphas[m] = a[m] / lead;
    betas[0] = Rational(1) / lead;
    return Tableau(std::move(alphas), std::move(betas), Family::BDF);
}

/// Validate user-supplied coefficients.
inline Tableau custom_tableau(std::vector<Rational> alphas, std::vector<Rational> betas) {
    return Tableau(std::move(alphas), std::move(betas), Family::Custom);
}

/// Explicit midpoint (leapfrog): y_n = y_{n-2} + 2h f_{n-1}.
inline Tableau leapfrog() {
    return Tableau({Rational(1), Rational(0), Rational(-1)},
                   {Rational(0), Rational(2), Rational(0)}, Family::Custom);
}

// ---------------------------------------------------------------------------
// Tableau text format:
//   k=<int>
//   alpha= a0 a1 ... ak
//   beta= b0 b1 ... bk
// entries as p/q or integer strings, whitespace separated, '#' comments.

inline Tableau parse_tableau(std::istream& in) {
    int k = -1;
    std::vector<Rational> alphas, betas;
    bool have_alpha = false, have_beta = false;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string stripped = line;
        stripped.erase(std::remove_if(stripped.begin(), stripped.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       stripped.end());
        if (stripped.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("tableau file: expected key=value, got '" + line + "'");
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  key.end());
        std::istringstream rest(line.substr(eq + 1));
        if (key == "k") {
            rest >> k;
            if (rest.fail()) throw std::domain_error("tableau file: bad k line");
        } else if (key == "alpha" || key == "beta") {
            std::vector<Rational> vals;
            std::string tok;
            while (rest >> tok) vals.push_back(parse_rational(tok));
            if (key == "alpha") {
                alphas = std::move(vals);
                have_alpha = true;
            } else {
                betas = std::move(vals);
                have_beta = true;
            }
        } else {
            throw std::domain_error("tableau file: unknown key '" + key + "'");
        }
    }
    if (k < 1 || !have_alpha || !have_beta)
        throw std::domain_error("tableau file: need k=, alpha=, beta= lines");
    if (alphas.size() != static_cast<std::size_t>(k) + 1 ||
        betas.size() != static_cast<std::size_t>(k) + 1)
        throw std::domain_error("tableau file: coefficient counts must equal k+1");
    return custom_tableau(std::move(alphas), std::move(betas));
}

inline std::string format_tableau(const Tableau& t) {
    std::ostringstream out;
    out << "k=" << t.steps() << "\n";
    out << "alpha=";
    for (const auto& a : t.alphas()) out << " " << to_string(a);
    out << "\nbeta=";
    for (const auto& b : t.betas()) out << " " << to_string(b);
    out << "\n";
    return out.str();
}

}  // namespace lmm
