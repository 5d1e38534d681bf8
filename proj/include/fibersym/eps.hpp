#pragma once

#include "fibersym/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace fibersym {

/// Element of Q[eps] with eps a positive infinitesimal: c0 + c1*eps + c2*eps^2 + ...
/// The order is lexicographic on (c0, c1, c2, ...), so 0 < eps < q for every
/// positive rational q. Arithmetic is exact polynomial arithmetic.
class EpsNumber {
  public:
    EpsNumber() = default;
    EpsNumber(const Rational& c0) : coeffs_{c0} { trim(); }  // NOLINT implicit
    EpsNumber(long c0) : coeffs_{Rational(c0)} { trim(); }   // NOLINT implicit
    explicit EpsNumber(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static EpsNumber eps(long k = 1) {
        std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
        c.back() = 1;
        return EpsNumber(std::move(c));
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    Rational rational_part() const { return coeff(0); }
    bool is_zero() const { return coeffs_.empty(); }
    /// True when the rational part vanishes (the value is smaller in magnitude
    /// than every positive rational).
    bool is_infinitesimal() const { return coeff(0) == 0; }

    friend EpsNumber operator+(const EpsNumber& a, const EpsNumber& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
        return EpsNumber(std::move(c));
    }
    friend EpsNumber operator-(const EpsNumber& a, const EpsNumber& b) { return a + (-b); }
    EpsNumber operator-() const {
        std::vector<Rational> c(coeffs_);
        for (auto& x : c) x = -x;
        return EpsNumber(std::move(c));
    }
    friend EpsNumber operator*(const EpsNumber& a, const EpsNumber& b) {
        if (a.is_zero() || b.is_zero()) return EpsNumber();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return EpsNumber(std::move(c));
    }
    friend EpsNumber operator*(const Rational& s, const EpsNumber& a) {
        std::vector<Rational> c(a.coeffs_);
        for (auto& x : c) x *= s;
        return EpsNumber(std::move(c));
    }
    EpsNumber& operator+=(const EpsNumber& o) { return *this = *this + o; }
    EpsNumber& operator-=(const EpsNumber& o) { return *this = *this - o; }

    /// Exact division by a nonzero rational.
    EpsNumber div(const Rational& s) const {
        if (s == 0) throw std::domain_error("EpsNumber: division by zero");
        std::vector<Rational> c(coeffs_);
        for (auto& x : c) x /= s;
        return EpsNumber(std::move(c));
    }

    friend std::strong_ordering operator<=>(const EpsNumber& a, const EpsNumber& b) {
        std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t k = 0; k < n; ++k) {
            Rational x = a.coeff(k), y = b.coeff(k);
            if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const EpsNumber& a, const EpsNumber& b) { return a.coeffs_ == b.coeffs_; }

    /// Largest integer <= value, in the ordered field.
    Integer floor() const {
        Rational c0 = coeff(0);
        if (!is_integer(c0)) return floor_int(c0);
        // integer rational part: the infinitesimal tail decides
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            if (coeffs_[k] > 0) return num(c0);
            if (coeffs_[k] < 0) return num(c0) - 1;
        }
        return num(c0);
    }

    /// Canonical representative in [0, 1) modulo 1.
    EpsNumber mod1() const { return *this - EpsNumber(Rational(floor())); }

    /// Representative in [-1/2, 1/2) modulo 1.
    EpsNumber centered_mod1() const {
        EpsNumber half(Rational(1, 2));
        return *this - EpsNumber(Rational((*this + half).floor()));
    }

    /// Symbolic rendering with eps printed as "e", e.g. "1-3e", "e+1/2" -> "1/2+e".
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            std::string mag = to_string(c < 0 ? Rational(-c) : c);
            std::string term;
            if (k == 0) {
                term = mag;
            } else {
                std::string pow = k == 1 ? "e" : "e^" + std::to_string(k);
                term = (mag == "1") ? pow : mag + pow;
            }
            if (c < 0)
                out += "-" + term;
            else if (!out.empty())
                out += "+" + term;
            else
                out += term;
        }
        return out.empty() ? "0" : out;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

}  // namespace fibersym
