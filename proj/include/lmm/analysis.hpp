#pragma once

// Order and consistency analysis of a tableau. Two routes are provided and
// tested against each other: the Taylor constants C_i of the linear operator
//
//   L_h[y] = sum_j [ alpha_j y(t - jh) - h beta_j y'(t - jh) ],
//
// and the characteristic-polynomial criterion rho(1) = 0, rho'(1) = sigma(1).
// Note the sign convention: expanding L_h gives C_1 = -(sum j alpha_j +
// sum beta_j); the classical consistency sums are the negation. Both vanish
// together, so the boolean criteria coincide.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmm/polynomial.hpp"
#include "lmm/rational.hpp"
#include "lmm/tableau.hpp"

namespace lmm {

struct TaylorConstants {
    std::vector<Rational> values;  // C_0 .. C_qmax
};

struct OrderReport {
    bool consistent = false;
    int order_p = 0;
    Rational error_constant;  // C_{p+1}
    TaylorConstants constants;
};

/// rho(xi) = sum_j alpha_j xi^{k-j} (monic, degree k);
/// sigma(xi) = sum_j beta_j xi^{k-j}.
struct CharacteristicPair {
    Poly<Rational> rho;
    Poly<Rational> sigma;
};

/// Exact C_0..C_qmax:
///   C_0 = sum_j alpha_j
///   C_i = (-1)^i [ (1/i!) sum_{j>=1} j^i alpha_j
///                + (1/(i-1)!) sum_{j>=0} j^{i-1} beta_j ],  0^0 := 1.
inline TaylorConstants taylor_constants(const Tableau& t, int q_max) {
    if (q_max < 0) throw std::domain_error("taylor_constants: q_max must be >= 0");
    const int k = t.steps();
    TaylorConstants out;
    out.values.reserve(q_max + 1);
    Rational c0 = 0;
    for (const auto& a : t.alphas()) c0 += a;
    out.values.push_back(c0);
    for (int i = 1; i <= q_max; ++i) {
        Rational alpha_sum = 0, beta_sum = 0;
        for (int j = 1; j <= k; ++j)
            alpha_sum += pow_rational(Rational(j), static_cast<unsigned>(i)) * t.alphas()[j];
        for (int j = 0; j <= k; ++j)
            beta_sum += pow_rational(Rational(j), static_cast<unsigned>(i - 1)) * t.betas()[j];
        Rational ci = alpha_sum / factorial(static_cast<unsigned>(i)) +
                      beta_sum / factorial(static_cast<unsigned>(i - 1));
        if (i % 2 != 0) ci = -ci;
        out.values.push_back(ci);
    }
    return out;
}

/// Largest p with C_0 = ... = C_p = 0, searched up to q_max = k+3.
/// Consistent iff p >= 1; error constant is C_{p+1}.
inline OrderReport order_report(const Tableau& t) {
    const int q_max = t.steps() + 3;
    OrderReport rep;
    rep.constants = taylor_constants(t, q_max);
    int p = -1;
    while (p + 1 <= q_max && rep.constants.values[p + 1] == 0) ++p;
    if (p + 1 > q_max)
        throw std::runtime_error(
            "order_report: all Taylor constants vanish through C_" + std::to_string(q_max) +
            " (degenerate tableau)");
    rep.order_p = std::max(p, 0);
    rep.consistent = p >= 1;
    rep.error_constant = rep.constants.values[p + 1];
    return rep;
}

/// Consistency by the coefficient sums:
/// sum alpha_j = 0 and sum_{j>=1} j alpha_j + sum beta_j = 0, exactly.
inline bool consistency_by_sums(const Tableau& t) {
    Rational s0 = 0, s1 = 0;
    for (const auto& a : t.alphas()) s0 += a;
    for (int j = 1; j <= t.steps(); ++j) s1 += Rational(j) * t.alphas()[j];
    for (const auto& b : t.betas()) s1 += b;
    return s0 == 0 && s1 == 0;
}

inline CharacteristicPair characteristic_pair(const Tableau& t) {
    const int k = t.steps();
    std::vector<Rational> rho(k + 1, Rational(0)), sigma(k + 1, Rational(0));
    for (int j = 0; j <= k; ++j) {
        rho[k - j] = t.alphas()[j];
        sigma[k - j] = t.betas()[j];
    }
    return {Poly<Rational>(std::move(rho)), Poly<Rational>(std::move(sigma))};
}

/// Consistency by rho(1) = 0 and rho'(1) = sigma(1), exactly.
inline bool consistency_by_polys(const Tableau& t) {
    const auto [rho, sigma] = characteristic_pair(t);
    return rho.eval(1) == 0 && rho.derivative().eval(1) == sigma.eval(1);
}

/// Flat key-value serialization consumed by the CLI.
inline std::string format_order_report(const OrderReport& rep) {
    std::ostringstream out;
    out << "consistent=" << (rep.consistent ? "true" : "false") << "\n";
    out << "order=" << rep.order_p << "\n";
    out << "error_constant=" << to_string(rep.error_constant) << "\n";
    for (std::size_t i = 0; i < rep.constants.values.size(); ++i)
        out << "C" << i << "=" << to_string(rep.constants.values[i]) << "\n";
    return out.str();
}

}  // namespace lmm
