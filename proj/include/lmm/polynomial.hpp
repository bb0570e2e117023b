#pragma once

// Dense univariate polynomials over an arbitrary coefficient ring.
// Coefficients are stored in ascending-degree order; instantiated with
// Rational for exact synthesis/analysis work and std::complex<double> for
// stability computations.

#include <cstddef>
#include <vector>

namespace lmm {

template <class T>
class Poly {
public:
    Poly() : coeffs_{T(0)} {}
    explicit Poly(std::vector<T> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(T(0));
        trim();
    }

    static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
    /// The monomial x.
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }

    const std::vector<T>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    const T& operator[](std::size_t i) const { return coeffs_[i]; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == T(0); }

    T eval(const T& x) const {
        T acc = T(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() == 1) return Poly();
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * T(static_cast<int>(i));
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const {
        std::vector<T> a(coeffs_.size() + 1, T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / T(static_cast<int>(i + 1));
        return Poly(std::move(a));
    }

    /// Definite integral over [lo, hi].
    T integral(const T& lo, const T& hi) const {
        const Poly a = antiderivative();
        return a.eval(hi) - a.eval(lo);
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> c(std::max(coeffs_.size(), o.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
        return Poly(std::move(c));
    }

    Poly operator-(const Poly& o) const {
        std::vector<T> c(std::max(coeffs_.size(), o.coeffs_.size()), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
        return Poly(std::move(c));
    }

    Poly operator*(const Poly& o) const {
        std::vector<T> c(coeffs_.size() + o.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(c));
    }

    Poly operator*(const T& s) const {
        std::vector<T> c = coeffs_;
        for (auto& v : c) v *= s;
        return Poly(std::move(c));
    }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == T(0)) coeffs_.pop_back();
    }
    std::vector<T> coeffs_;
};

}  // namespace lmm
