#pragma once

// Univariate polynomials over the rationals in the indeterminate y.

#include <homsense/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homsense {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }
  Polynomial(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) c_.push_back(constant);
  }

  static Polynomial monomial(const Rational& coeff, std::size_t deg) {
    std::vector<Rational> c(deg + 1);
    c[deg] = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial y() { return monomial(1, 1); }
  /// y - root
  static Polynomial linear(const Rational& root) { return Polynomial(std::vector<Rational>{-root, 1}); }

  bool is_zero() const { return c_.empty(); }
  /// Empty for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    const Rational inv = 1 / c_.back();
    Polynomial out = *this;
    for (auto& x : out.c_) x *= inv;
    return out;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial& operator+=(const Polynomial& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.c_.size() < b.c_.size()) return {Polynomial{}, a};
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quot(a.c_.size() - b.c_.size() + 1);
    const Rational inv = 1 / b.c_.back();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Rational q = rem[k + db] * inv;
      quot[k] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.c_[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  bool divides(const Polynomial& a) const { return (a % *this).is_zero(); }

  /// Human-readable form in descending powers, e.g. "y^2 - 3/2*y + 1".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      const bool neg = a < 0;
      const Rational mag = neg ? Rational(-a) : a;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      const bool unit = (mag == 1);
      if (k == 0 || !unit) out += homsense::to_string(mag);
      if (k > 0) {
        if (!unit) out += "*";
        out += "y";
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Polynomial pow(const Polynomial& base, std::size_t e) {
  Polynomial out(Rational(1));
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace homsense
