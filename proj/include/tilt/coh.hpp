#pragma once

// Indecomposable coherent sheaves on a weighted projective line, restricted to
// line bundles O(x) and torsion sheaves in the standard tubes. All Hom and Ext
// dimensions are computed exactly from graded dimensions of R and the
// uniserial structure of the tubes.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "tilt/lattice.hpp"

namespace tilt {

/// A tube of coh X: exceptional tube i (0-based, rank p_i) or the generic
/// homogeneous tube (rank 1). All homogeneous tubes behave identically in the
/// modeled fragment, so a single label stands for them.
struct TubeId {
  static constexpr int homogeneous = -1;
  int index = homogeneous;

  bool is_homogeneous() const { return index == homogeneous; }
  friend bool operator==(TubeId, TubeId) = default;
  /// Exceptional tubes first, homogeneous last.
  friend bool operator<(TubeId a, TubeId b) {
    if (a.is_homogeneous() != b.is_homogeneous()) return b.is_homogeneous();
    return a.index < b.index;
  }
};

struct LineBundle {
  LElement x;
  friend bool operator==(const LineBundle&, const LineBundle&) = default;
};

/// Uniserial torsion sheaf with socle S_{tube,socle} and composition factors
/// S_{tube,socle}, S_{tube,socle+1}, ... bottom to top.
struct TorsionSheaf {
  TubeId tube;
  int socle = 0;
  int length = 1;
  friend bool operator==(const TorsionSheaf&, const TorsionSheaf&) = default;
};

class Sheaf {
 public:
  Sheaf() = default;

  static Sheaf line(const LElement& x) { return Sheaf(x.weight(), LineBundle{x}); }
  static Sheaf torsion(const WeightType& w, TubeId tube, std::int64_t socle, int length) {
    if (length < 1) throw domain_error("torsion length must be at least 1");
    if (!tube.is_homogeneous() && (tube.index < 0 || static_cast<std::size_t>(tube.index) >= w.t()))
      throw domain_error("tube index out of range");
    const int r = tube_rank(w, tube);
    return Sheaf(w, TorsionSheaf{tube, static_cast<int>(floor_mod(socle, r)), length});
  }
  /// S_{i,j} in exceptional tube i (0-based).
  static Sheaf simple(const WeightType& w, int tube, std::int64_t j) { return torsion(w, TubeId{tube}, j, 1); }
  /// The ordinary simple S_mu of a homogeneous tube.
  static Sheaf ordinary_simple(const WeightType& w) { return torsion(w, TubeId{}, 0, 1); }

  static int tube_rank(const WeightType& w, TubeId tube) { return tube.is_homogeneous() ? 1 : w.p(tube.index); }

  const WeightType& weight() const { return weight_; }
  bool is_line() const { return std::holds_alternative<LineBundle>(v_); }
  bool is_torsion() const { return !is_line(); }
  const LElement& degree() const { return std::get<LineBundle>(v_).x; }
  const TorsionSheaf& torsion_data() const { return std::get<TorsionSheaf>(v_); }
  int tube_rank() const { return tube_rank(weight_, torsion_data().tube); }

  friend bool operator==(const Sheaf& a, const Sheaf& b) { return a.v_ == b.v_ && a.weight_ == b.weight_; }

  /// Canonical order: line bundles (by c-coefficient, then l_i) before torsion
  /// (by tube, socle, length).
  friend bool operator<(const Sheaf& a, const Sheaf& b) {
    if (a.is_line() != b.is_line()) return a.is_line();
    if (a.is_line()) return a.degree() < b.degree();
    const auto& s = a.torsion_data();
    const auto& t = b.torsion_data();
    if (!(s.tube == t.tube)) return s.tube < t.tube;
    if (s.socle != t.socle) return s.socle < t.socle;
    return s.length < t.length;
  }

  /// "O(expr)", "T(i; socle; len)" or "T(hom; 0; len)"; tube indices are 1-based.
  std::string to_string() const {
    if (is_line()) return "O(" + degree().to_string() + ")";
    const auto& s = torsion_data();
    std::string tube = s.tube.is_homogeneous() ? "hom" : std::to_string(s.tube.index + 1);
    return "T(" + tube + "; " + std::to_string(s.socle) + "; " + std::to_string(s.length) + ")";
  }

  static Sheaf parse(const WeightType& w, std::string_view text);

 private:
  Sheaf(WeightType w, std::variant<LineBundle, TorsionSheaf> v) : weight_(std::move(w)), v_(std::move(v)) {}

  WeightType weight_;
  std::variant<LineBundle, TorsionSheaf> v_;
};

inline std::ostream& operator<<(std::ostream& os, const Sheaf& s) { return os << s.to_string(); }

inline Sheaf Sheaf::parse(const WeightType& w, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.size() < 3 || s[1] != '(' || s.back() != ')') throw parse_error("bad sheaf literal '" + std::string(text) + "'");
  std::string_view body = s.substr(2, s.size() - 3);
  if (s[0] == 'O') return line(LElement::parse(w, body));
  if (s[0] != 'T') throw parse_error("bad sheaf literal '" + std::string(text) + "'");
  std::string_view parts[3];
  for (int k = 0; k < 3; ++k) {
    std::size_t semi = body.find(';');
    if ((k < 2) == (semi == std::string_view::npos)) throw parse_error("torsion literal needs three fields: '" + std::string(text) + "'");
    parts[k] = trim(body.substr(0, semi));
    body = k < 2 ? body.substr(semi + 1) : std::string_view{};
  }
  auto to_int = [&](std::string_view f) {
    std::string str(f);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(str, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != str.size()) throw parse_error("bad integer '" + str + "' in '" + std::string(text) + "'");
    return v;
  };
  // "socle 0" is accepted as a spelling of the homogeneous socle field.
  std::string_view socle_field = parts[1];
  if (socle_field.rfind("socle", 0) == 0) socle_field = trim(socle_field.substr(5));
  TubeId tube;
  if (parts[0] != "hom") {
    long long i = to_int(parts[0]);
    if (i < 1 || static_cast<std::size_t>(i) > w.t()) throw parse_error("tube index out of range in '" + std::string(text) + "'");
    tube.index = static_cast<int>(i - 1);
  }
  long long len = to_int(parts[2]);
  if (len < 1) throw parse_error("torsion length must be positive in '" + std::string(text) + "'");
  return torsion(w, tube, to_int(socle_field), static_cast<int>(len));
}

namespace detail {
inline void check_same(const Sheaf& a, const Sheaf& b) {
  if (!(a.weight() == b.weight())) throw mismatch_error("sheaves belong to different weight types");
}
}  // namespace detail

/// Auslander-Reiten translation: shift by omega on line bundles, socle - 1 on torsion.
inline Sheaf tau(const Sheaf& s) {
  if (s.is_line()) return Sheaf::line(s.degree() + LElement::omega(s.weight()));
  const auto& t = s.torsion_data();
  return Sheaf::torsion(s.weight(), t.tube, t.socle - 1, t.length);
}

inline Sheaf tau_inverse(const Sheaf& s) {
  if (s.is_line()) return Sheaf::line(s.degree() - LElement::omega(s.weight()));
  const auto& t = s.torsion_data();
  return Sheaf::torsion(s.weight(), t.tube, t.socle + 1, t.length);
}

/// Grading shift E(y). On exceptional tube i the socle advances by the x_i
/// coefficient of y; homogeneous tubes are fixed.
inline Sheaf shift(const Sheaf& s, const LElement& y) {
  if (!(s.weight() == y.weight())) throw mismatch_error("shift by element of a different weight type");
  if (s.is_line()) return Sheaf::line(s.degree() + y);
  const auto& t = s.torsion_data();
  if (t.tube.is_homogeneous()) return s;
  return Sheaf::torsion(s.weight(), t.tube, t.socle + y.li(t.tube.index), t.length);
}

/// chi(O(x), O(y)) = dim Hom - dim Ext^1, via Serre duality.
inline std::int64_t euler_line(const LElement& x, const LElement& y) {
  return graded_dim(y - x) - graded_dim(x + LElement::omega(x.weight()) - y);
}

inline int rank(const Sheaf& s) { return s.is_line() ? 1 : 0; }

/// dim Hom(a, b).
inline std::int64_t hom_dim(const Sheaf& a, const Sheaf& b) {
  detail::check_same(a, b);
  const WeightType& w = a.weight();
  if (a.is_line() && b.is_line()) return graded_dim(b.degree() - a.degree());
  if (a.is_torsion() && b.is_line()) return 0;
  if (a.is_line()) {
    // Ext^1(line, torsion) = 0, so Hom equals the Euler form, which telescopes
    // along the composition series.
    const LElement& x = a.degree();
    const auto& t = b.torsion_data();
    if (t.tube.is_homogeneous())
      return t.length * (euler_line(x, LElement::canonical(w)) - euler_line(x, LElement::zero(w)));
    Coeffs top(w.t(), 0), bottom(w.t(), 0);
    top[t.tube.index] = t.socle + t.length;
    bottom[t.tube.index] = t.socle;
    return euler_line(x, LElement::normal_form(w, top, 0)) - euler_line(x, LElement::normal_form(w, bottom, 0));
  }
  const auto& s = a.torsion_data();
  const auto& t = b.torsion_data();
  if (!(s.tube == t.tube)) return 0;
  // Images are quotients of a of length m with socle S_{s.socle + s.length - m};
  // they embed in b iff that socle is b's socle.
  const int d = a.tube_rank();
  const std::int64_t residue = floor_mod(static_cast<std::int64_t>(s.socle) + s.length - t.socle, d);
  const int top = std::min(s.length, t.length);
  std::int64_t count = 0;
  for (int m = 1; m <= top; ++m)
    if (m % d == residue) ++count;
  return count;
}

/// dim Ext^1(a, b) = dim Hom(b, tau a).
inline std::int64_t ext1_dim(const Sheaf& a, const Sheaf& b) { return hom_dim(b, tau(a)); }

inline bool is_rigid(const Sheaf& s) { return ext1_dim(s, s) == 0; }
/// Every modeled object is indecomposable, so exceptional means rigid.
inline bool is_exceptional(const Sheaf& s) { return is_rigid(s); }

}  // namespace tilt
