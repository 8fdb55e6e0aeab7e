#pragma once

// The rank-one abelian group L of a weighted projective line, with its
// normal form, partial order, genus and the graded dimensions of the
// coordinate ring R.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>

#include "tilt/errors.hpp"

namespace tilt {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

/// floor(a / b) and the matching non-negative remainder, b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}
inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

/// Weight sequence (p1,...,pt). Cheap to copy; equality is by value.
class WeightType {
 public:
  WeightType() = default;
  explicit WeightType(std::vector<int> weights) {
    if (weights.empty()) throw domain_error("weight type must have at least one weight");
    for (int p : weights)
      if (p < 1) throw domain_error("weights must be positive integers");
    std::int64_t l = 1;
    for (int p : weights) l = std::lcm(l, static_cast<std::int64_t>(p));
    data_ = std::make_shared<const Data>(Data{std::move(weights), l});
  }

  std::size_t t() const { return data_->p.size(); }
  int p(std::size_t i) const { return data_->p[i]; }
  const std::vector<int>& weights() const { return data_->p; }
  /// Least common multiple of the weights.
  std::int64_t pbar() const { return data_->pbar; }
  bool valid() const { return static_cast<bool>(data_); }

  friend bool operator==(const WeightType& a, const WeightType& b) {
    return a.data_ == b.data_ || (a.data_ && b.data_ && a.data_->p == b.data_->p);
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < t(); ++i) {
      if (i) s += ',';
      s += std::to_string(p(i));
    }
    return s + ")";
  }

  /// Parses "(p1,p2,...,pt)"; surrounding whitespace and the parentheses are optional.
  static WeightType parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (!s.empty() && s.front() == '(') {
      if (s.back() != ')') throw parse_error("unbalanced parenthesis in weight type: " + std::string(text));
      s = s.substr(1, s.size() - 2);
    }
    if (s.empty()) throw parse_error("empty weight type");
    std::vector<int> w;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      std::string tok = s.substr(pos, comma - pos);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw parse_error("bad weight '" + tok + "' in " + std::string(text));
      w.push_back(std::stoi(tok));
      pos = comma + 1;
    }
    try {
      return WeightType(std::move(w));
    } catch (const domain_error& e) {
      throw parse_error(e.what());
    }
  }

 private:
  struct Data {
    std::vector<int> p;
    std::int64_t pbar;
  };
  std::shared_ptr<const Data> data_;
};

using Coeffs = boost::container::small_vector<std::int64_t, 6>;

/// Element of L, always held in normal form sum l_i x_i + l c with 0 <= l_i < p_i.
class LElement {
 public:
  LElement() = default;

  /// Reduces raw coefficients using p_i x_i = c.
  static LElement normal_form(const WeightType& w, std::span<const std::int64_t> raw, std::int64_t raw_l) {
    if (raw.size() != w.t()) throw mismatch_error("coefficient count does not match weight type");
    LElement e;
    e.weight_ = w;
    e.l_ = raw_l;
    e.li_.resize(w.t());
    for (std::size_t i = 0; i < w.t(); ++i) {
      e.li_[i] = floor_mod(raw[i], w.p(i));
      e.l_ += floor_div(raw[i], w.p(i));
    }
    return e;
  }
  static LElement normal_form(const WeightType& w, const Coeffs& raw, std::int64_t raw_l) {
    return normal_form(w, std::span<const std::int64_t>(raw.data(), raw.size()), raw_l);
  }
  static LElement normal_form(const WeightType& w, std::initializer_list<std::int64_t> raw, std::int64_t raw_l) {
    std::vector<std::int64_t> v(raw);
    return normal_form(w, std::span<const std::int64_t>(v), raw_l);
  }

  static LElement zero(const WeightType& w) { return normal_form(w, Coeffs(w.t(), 0), 0); }
  /// The canonical element c.
  static LElement canonical(const WeightType& w) { return normal_form(w, Coeffs(w.t(), 0), 1); }
  /// The generator x_i (0-based index).
  static LElement generator(const WeightType& w, std::size_t i) {
    Coeffs raw(w.t(), 0);
    raw.at(i) = 1;
    return normal_form(w, raw, 0);
  }
  /// The dualizing element (t-2)c - sum x_i.
  static LElement omega(const WeightType& w) {
    return normal_form(w, Coeffs(w.t(), -1), static_cast<std::int64_t>(w.t()) - 2);
  }

  const WeightType& weight() const { return weight_; }
  std::int64_t li(std::size_t i) const { return li_[i]; }
  const Coeffs& coeffs() const { return li_; }
  /// Coefficient of c in the normal form.
  std::int64_t l() const { return l_; }
  bool is_zero() const {
    return l_ == 0 && std::all_of(li_.begin(), li_.end(), [](auto v) { return v == 0; });
  }

  friend LElement operator+(const LElement& a, const LElement& b) {
    check_same(a, b);
    Coeffs raw(a.li_.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = a.li_[i] + b.li_[i];
    return normal_form(a.weight_, raw, a.l_ + b.l_);
  }
  friend LElement operator-(const LElement& a) {
    Coeffs raw(a.li_.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = -a.li_[i];
    return normal_form(a.weight_, raw, -a.l_);
  }
  friend LElement operator-(const LElement& a, const LElement& b) { return a + (-b); }
  friend LElement operator*(std::int64_t n, const LElement& a) {
    Coeffs raw(a.li_.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = n * a.li_[i];
    return normal_form(a.weight_, raw, n * a.l_);
  }

  friend bool operator==(const LElement& a, const LElement& b) {
    return a.l_ == b.l_ && a.li_ == b.li_ && a.weight_ == b.weight_;
  }
  /// Total order used for canonical sorting: by c-coefficient, then l_i.
  /// This is not the partial order of L; see leq().
  friend bool operator<(const LElement& a, const LElement& b) {
    if (a.l_ != b.l_) return a.l_ < b.l_;
    return std::lexicographical_compare(a.li_.begin(), a.li_.end(), b.li_.begin(), b.li_.end());
  }

  /// Renders "l1*x1+...+lt*xt+l*c".
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < li_.size(); ++i) {
      if (i) s += '+';
      s += std::to_string(li_[i]) + "*x" + std::to_string(i + 1);
    }
    s += (l_ < 0 ? "-" : "+") + std::to_string(l_ < 0 ? -l_ : l_) + "*c";
    return s;
  }

  /// Parses a signed sum of terms: "[n*]x<i>", "[n*]c", "[n*]w" (dualizing
  /// element) or a bare integer n, read as n*c.
  static LElement parse(const WeightType& w, std::string_view text);

 private:
  static void check_same(const LElement& a, const LElement& b) {
    if (!(a.weight_ == b.weight_)) throw mismatch_error("elements belong to different weight types");
  }

  WeightType weight_;
  Coeffs li_;
  std::int64_t l_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const LElement& x) { return os << x.to_string(); }

inline LElement LElement::parse(const WeightType& w, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw parse_error("empty lattice expression");
  Coeffs raw(w.t(), 0);
  std::int64_t raw_l = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw parse_error(why + " in lattice expression '" + std::string(text) + "'"); };
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::int64_t n = 1;
    bool has_number = pos > start;
    if (has_number) n = std::stoll(s.substr(start, pos - start));
    if (pos < s.size() && s[pos] == '*') {
      if (!has_number) fail("'*' without coefficient");
      ++pos;
    }
    if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') {
      if (!has_number) fail("empty term");
      raw_l += sign * n;
      continue;
    }
    char sym = s[pos++];
    if (sym == 'c') {
      raw_l += sign * n;
    } else if (sym == 'w') {
      LElement om = omega(w);
      for (std::size_t i = 0; i < w.t(); ++i) raw[i] += sign * n * om.li(i);
      raw_l += sign * n * om.l();
    } else if (sym == 'x') {
      std::size_t istart = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == istart) fail("missing generator index");
      std::size_t idx = std::stoul(s.substr(istart, pos - istart));
      if (idx < 1 || idx > w.t()) fail("generator index out of range");
      raw[idx - 1] += sign * n;
    } else {
      fail(std::string("unknown symbol '") + sym + "'");
    }
  }
  return normal_form(w, raw, raw_l);
}

/// Partial order of L: x <= y iff y - x is a non-negative combination of the
/// x_i, i.e. the c-coefficient of the normal form of y - x is non-negative.
inline bool leq(const LElement& x, const LElement& y) {
  if (!(x.weight() == y.weight())) throw mismatch_error("elements belong to different weight types");
  return (y - x).l() >= 0;
}

inline bool is_effective(const LElement& x) { return leq(LElement::zero(x.weight()), x); }

enum class GenusKind { Domestic, Tubular, Wild };

inline const char* to_string(GenusKind k) {
  switch (k) {
    case GenusKind::Domestic: return "domestic";
    case GenusKind::Tubular: return "tubular";
    case GenusKind::Wild: return "wild";
  }
  return "?";
}

struct GenusClass {
  GenusKind kind;
  Rational value;
};

/// g = 1 + ((t-2) pbar - sum pbar/p_i) / 2, exactly.
inline GenusClass genus(const WeightType& w) {
  const std::int64_t p = w.pbar();
  std::int64_t num = (static_cast<std::int64_t>(w.t()) - 2) * p;
  for (int pi : w.weights()) num -= p / pi;
  Rational g = Rational(1) + Rational(num, 2);
  GenusKind k = g < Rational(1) ? GenusKind::Domestic : (g == Rational(1) ? GenusKind::Tubular : GenusKind::Wild);
  return {k, g};
}

/// Rank of the Grothendieck group: sum (p_i - 1) + 2.
inline int rank_g0(const WeightType& w) {
  int r = 2;
  for (int p : w.weights()) r += p - 1;
  return r;
}

/// dim R_x = max(0, l + 1) for x in normal form.
inline std::int64_t graded_dim(const LElement& x) { return std::max<std::int64_t>(0, x.l() + 1); }

/// Counts reduced monomials X_1^a1 ... X_t^at of degree x: a1, a2 free and
/// a_i < p_i for i >= 3. With a single weight the ring is padded by a second
/// generator of degree c, matching the weight type (p, 1).
inline std::int64_t graded_dim_oracle(const LElement& x) {
  const WeightType& w = x.weight();
  const std::size_t t = w.t();
  if (x.l() < 0) return 0;
  const std::int64_t p1 = w.p(0);
  const std::int64_t p2 = t >= 2 ? w.p(1) : 1;
  // a1 x1 contributes floor(a1/p1) to the c-coefficient, so larger exponents overshoot l.
  const std::int64_t b1 = p1 * (x.l() + 2);
  const std::int64_t b2 = p2 * (x.l() + 2);
  std::int64_t count = 0;
  Coeffs raw(t, 0);
  std::vector<std::int64_t> tail(t > 2 ? t - 2 : 0, 0);
  for (std::int64_t a1 = 0; a1 < b1; ++a1) {
    for (std::int64_t a2 = 0; a2 < b2; ++a2) {
      std::fill(tail.begin(), tail.end(), 0);
      while (true) {
        raw[0] = a1;
        std::int64_t extra_c = 0;
        if (t >= 2)
          raw[1] = a2;
        else
          extra_c = a2;
        for (std::size_t i = 2; i < t; ++i) raw[i] = tail[i - 2];
        if (LElement::normal_form(w, raw, extra_c) == x) ++count;
        std::size_t k = 0;
        while (k < tail.size() && ++tail[k] == w.p(k + 2)) tail[k++] = 0;
        if (k == tail.size()) break;
      }
    }
  }
  return count;
}

}  // namespace tilt
