#pragma once

// Laurent polynomials in x1..xn with arbitrary-precision integer coefficients.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tilt/errors.hpp"

namespace tilt {

using BigInt = boost::multiprecision::cpp_int;

class LaurentPoly {
 public:
  using Exponent = std::vector<int>;
  using Terms = std::map<Exponent, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : n_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, BigInt c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), std::move(c));
    return p;
  }
  static LaurentPoly monomial(Exponent e, BigInt c = 1) {
    LaurentPoly p(e.size());
    p.add_term(std::move(e), std::move(c));
    return p;
  }
  /// The initial variable x_{i+1}.
  static LaurentPoly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(std::move(e));
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(Exponent e, BigInt c) {
    if (e.size() != n_) throw mismatch_error("exponent length does not match the number of variables");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    check_same(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    check_same(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_same(a, b);
    LaurentPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  /// Arbitrary but fixed total order (for sets and canonical seed keys).
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.terms_ < b.terms_;
  }

  /// Exact quotient a / b; throws inexact_division when b does not divide a in
  /// the Laurent ring.
  friend LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw inexact_division("division by zero");
    if (a.is_zero()) return a;
    // Clear monomial factors: a = x^sa * A, b = x^sb * Bp with A, Bp
    // polynomials and Bp free of monomial factors, so b | a iff Bp | A.
    const Exponent sa = a.min_exponent(), sb = b.min_exponent();
    LaurentPoly num = a.shifted(sa, -1), den = b.shifted(sb, -1);
    LaurentPoly q(a.n_);
    const auto& [lead_e, lead_c] = *den.terms_.rbegin();  // lex-largest term
    while (!num.is_zero()) {
      const auto& [e, c] = *num.terms_.rbegin();
      Exponent qe(a.n_);
      for (std::size_t i = 0; i < a.n_; ++i) {
        qe[i] = e[i] - lead_e[i];
        if (qe[i] < 0) throw inexact_division("Laurent division is not exact");
      }
      if (c % lead_c != 0) throw inexact_division("Laurent division is not exact");
      LaurentPoly t = monomial(qe, c / lead_c);
      num = num - t * den;
      q = q + t;
    }
    Exponent shift(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) shift[i] = sa[i] - sb[i];
    return q.shifted(shift, 1);
  }

  /// Every coefficient positive.
  bool positive() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
  }

  /// "(numerator)/denominator-monomial"; numerator terms by descending total
  /// degree, then descending lex. Variables print as x1..xn.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    Exponent den(n_, 0);
    for (const auto& [e, _] : terms_)
      for (std::size_t i = 0; i < n_; ++i) den[i] = std::max(den[i], -e[i]);
    std::vector<std::pair<Exponent, BigInt>> num;
    for (const auto& [e, c] : terms_) {
      Exponent s(n_);
      for (std::size_t i = 0; i < n_; ++i) s[i] = e[i] + den[i];
      num.emplace_back(std::move(s), c);
    }
    auto degree = [](const Exponent& e) {
      long d = 0;
      for (int x : e) d += x;
      return d;
    };
    std::sort(num.begin(), num.end(), [&](const auto& x, const auto& y) {
      if (degree(x.first) != degree(y.first)) return degree(x.first) > degree(y.first);
      return x.first > y.first;
    });
    std::string s;
    for (std::size_t k = 0; k < num.size(); ++k) {
      const auto& [e, c] = num[k];
      std::string mono = render_monomial(e);
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (c < 0)
        s += "-";
      else if (k)
        s += "+";
      if (mono.empty())
        s += mag.str();
      else
        s += (mag == 1 ? std::string() : mag.str() + "*") + mono;
    }
    std::string d = render_monomial(den);
    if (d.empty()) return s;
    if (num.size() > 1) s = "(" + s + ")";
    const auto factors = n_ - static_cast<std::size_t>(std::count(den.begin(), den.end(), 0));
    return s + "/" + (factors > 1 ? "(" + d + ")" : d);
  }

 private:
  static void check_same(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.n_ != b.n_) throw mismatch_error("Laurent polynomials in different numbers of variables");
  }

  static std::string render_monomial(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i + 1);
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  }

  Exponent min_exponent() const {
    Exponent m = terms_.begin()->first;
    for (const auto& [e, _] : terms_)
      for (std::size_t i = 0; i < n_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  LaurentPoly shifted(const Exponent& by, int sign) const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) {
      Exponent s(n_);
      for (std::size_t i = 0; i < n_; ++i) s[i] = e[i] + sign * by[i];
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  std::size_t n_ = 0;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

}  // namespace tilt
