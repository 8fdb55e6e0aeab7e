#pragma once

// Basic (cluster-)tilting objects as canonical sorted sets of indecomposables,
// over either backend: coherent sheaves on a weighted projective line, or the
// cluster category of a Dynkin quiver.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tilt/coh.hpp"
#include "tilt/dynkin.hpp"
#include "tilt/errors.hpp"
#include "tilt/lattice.hpp"

namespace tilt {

/// Duplicate-free sorted list of indecomposables. The canonical key is the
/// element literals joined by " | ".
template <class Object>
class RigidSet {
 public:
  using object_type = Object;

  RigidSet() = default;
  explicit RigidSet(std::vector<Object> elements) : elems_(std::move(elements)) {
    std::sort(elems_.begin(), elems_.end());
    if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
      throw domain_error("set is not basic: repeated summand");
  }

  const std::vector<Object>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Object& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::optional<std::size_t> index_of(const Object& o) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), o);
    if (it == elems_.end() || !(*it == o)) return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
  }
  bool contains(const Object& o) const { return index_of(o).has_value(); }

  /// All elements except the k-th.
  std::vector<Object> without(std::size_t k) const {
    std::vector<Object> rest;
    rest.reserve(elems_.size() - 1);
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (i != k) rest.push_back(elems_[i]);
    return rest;
  }

  std::string key() const {
    std::string s;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += " | ";
      s += elems_[i].to_string();
    }
    return s;
  }

  friend bool operator==(const RigidSet& a, const RigidSet& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<Object> elems_;
};

/// Line-bundle search window for coh mutation. Unset bounds select the
/// automatic window: the set's c-coefficient range widened by 2 + span on each
/// side, doubled on failure up to max_margin.
struct SearchWindow {
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;
  std::int64_t max_margin = 64;

  static SearchWindow range(std::int64_t lo, std::int64_t hi) { return {lo, hi, 0}; }
  static SearchWindow automatic(std::int64_t cap = 64) { return {std::nullopt, std::nullopt, cap}; }
  bool is_explicit() const { return lo.has_value() && hi.has_value(); }
};

template <class Object>
struct CandidateSet {
  std::vector<Object> objects;
  /// True when every possible complement in the modeled universe is listed.
  bool exhaustive = false;
  /// The whole line-bundle compatibility band fit inside the window.
  bool band_searched = false;
};

template <class B>
concept ExchangeBackend = requires(const B& b, const typename B::object_type& o,
                                   std::span<const typename B::object_type> s, std::string_view text) {
  typename B::object_type;
  { b.name() } -> std::convertible_to<std::string>;
  { b.tilting_size() } -> std::convertible_to<std::size_t>;
  { b.is_rigid(o) } -> std::same_as<bool>;
  { b.compatible(o, o) } -> std::same_as<bool>;
  { b.ext1(o, o) } -> std::convertible_to<std::int64_t>;
  { b.parse(text) } -> std::same_as<typename B::object_type>;
  { b.check(o) };
  { b.candidates(s, std::int64_t{}, std::int64_t{}) } -> std::same_as<CandidateSet<typename B::object_type>>;
  { b.line_range(s) } -> std::same_as<std::optional<std::pair<std::int64_t, std::int64_t>>>;
  { b.uses_window() } -> std::same_as<bool>;
  { b.fragment_complete() } -> std::same_as<bool>;
};

/// coh X over a weight type, restricted to line bundles and torsion sheaves.
class CohBackend {
 public:
  using object_type = Sheaf;

  explicit CohBackend(WeightType w) : w_(std::move(w)) {
    for (std::size_t i = 0; i < w_.t(); ++i)
      for (int j = 0; j < w_.p(i); ++j)
        for (int len = 1; len < w_.p(i); ++len) rigid_torsion_.push_back(Sheaf::torsion(w_, TubeId{static_cast<int>(i)}, j, len));
    std::sort(rigid_torsion_.begin(), rigid_torsion_.end());
  }

  const WeightType& weight() const { return w_; }
  std::string name() const { return w_.to_string(); }
  std::size_t tilting_size() const { return static_cast<std::size_t>(rank_g0(w_)); }

  bool is_rigid(const Sheaf& s) const { return tilt::is_rigid(s); }
  /// dim Ext^1(a,b) in coh X.
  std::int64_t ext1(const Sheaf& a, const Sheaf& b) const { return ext1_dim(a, b); }
  /// a + b rigid, equivalently Ext^1 vanishes in the cluster category.
  bool compatible(const Sheaf& a, const Sheaf& b) const {
    if (a.is_line() && b.is_line()) {
      // Fast path: both Ext groups are graded pieces of R.
      const LElement d = b.degree() - a.degree();
      const LElement om = LElement::omega(w_);
      return graded_dim(om - d) == 0 && graded_dim(om + d) == 0;
    }
    return ext1_dim(a, b) == 0 && ext1_dim(b, a) == 0;
  }

  Sheaf parse(std::string_view text) const { return Sheaf::parse(w_, text); }
  void check(const Sheaf& s) const {
    if (!(s.weight() == w_)) throw mismatch_error("object " + s.to_string() + " does not belong to weight type " + name());
  }

  /// For t <= 2 line bundles and torsion sheaves are all the indecomposables.
  bool fragment_complete() const { return w_.t() <= 2; }
  bool uses_window() const { return true; }

  const std::vector<Sheaf>& rigid_torsion() const { return rigid_torsion_; }

  /// All line bundles O(x) with c-coefficient of x in [lo, hi].
  std::vector<Sheaf> line_bundles(std::int64_t lo, std::int64_t hi) const {
    std::vector<Sheaf> out;
    Coeffs li(w_.t(), 0);
    for (std::int64_t l = lo; l <= hi; ++l) {
      std::fill(li.begin(), li.end(), 0);
      while (true) {
        out.push_back(Sheaf::line(LElement::normal_form(w_, li, l)));
        std::size_t k = 0;
        while (k < li.size() && ++li[k] == w_.p(k)) li[k++] = 0;
        if (k == li.size()) break;
      }
    }
    return out;
  }

  /// Exceptional objects of the fragment: line bundles in [lo, hi] and rigid torsion.
  std::vector<Sheaf> exceptional_objects(std::int64_t lo, std::int64_t hi) const {
    auto out = line_bundles(lo, hi);
    out.insert(out.end(), rigid_torsion_.begin(), rigid_torsion_.end());
    return out;
  }

  /// Range of c-coefficients over the line bundles of `set`.
  std::optional<std::pair<std::int64_t, std::int64_t>> line_range(std::span<const Sheaf> set) const {
    std::optional<std::pair<std::int64_t, std::int64_t>> r;
    for (const auto& s : set) {
      if (!s.is_line()) continue;
      const std::int64_t l = s.degree().l();
      if (!r)
        r = {l, l};
      else
        r = {std::min(r->first, l), std::max(r->second, l)};
    }
    return r;
  }

  /// Candidate complements for `rest`. A line bundle O(x) compatible with
  /// O(y) has |l(x) - l(y)| <= t + 1, so only that band around each line
  /// bundle of `rest` is enumerated.
  CandidateSet<Sheaf> candidates(std::span<const Sheaf> rest, std::int64_t lo, std::int64_t hi) const {
    CandidateSet<Sheaf> cs;
    std::int64_t band_lo = lo, band_hi = hi;
    bool exhaustive = false;
    if (auto r = line_range(rest)) {
      const std::int64_t reach = static_cast<std::int64_t>(w_.t()) + 1;
      const std::int64_t need_lo = r->second - reach, need_hi = r->first + reach;
      exhaustive = lo <= need_lo && need_hi <= hi;
      band_lo = std::max(lo, need_lo);
      band_hi = std::min(hi, need_hi);
    }
    cs.objects = line_bundles(band_lo, band_hi);
    cs.objects.insert(cs.objects.end(), rigid_torsion_.begin(), rigid_torsion_.end());
    cs.exhaustive = exhaustive && fragment_complete();
    cs.band_searched = exhaustive;
    return cs;
  }

 private:
  WeightType w_;
  std::vector<Sheaf> rigid_torsion_;
};

/// The cluster category of a Dynkin quiver.
class DynkinBackend {
 public:
  using object_type = DynkinObject;

  explicit DynkinBackend(AcyclicQuiver q) : cat_(std::move(q)) {}

  const DynkinCategory& category() const { return cat_; }
  const AcyclicQuiver& quiver() const { return cat_.quiver(); }
  std::string name() const { return cat_.quiver().to_string(); }
  std::size_t tilting_size() const { return static_cast<std::size_t>(cat_.quiver().n()); }

  bool is_rigid(const DynkinObject& o) const { return cat_.ext1_c(o, o) == 0; }
  std::int64_t ext1(const DynkinObject& a, const DynkinObject& b) const { return cat_.ext1_c(a, b); }
  bool compatible(const DynkinObject& a, const DynkinObject& b) const { return cat_.ext1_c(a, b) == 0; }
  DynkinObject parse(std::string_view text) const { return cat_.parse(text); }
  void check(const DynkinObject& o) const { (void)cat_.ext1_c(o, o); }

  bool fragment_complete() const { return true; }
  bool uses_window() const { return false; }
  std::optional<std::pair<std::int64_t, std::int64_t>> line_range(std::span<const DynkinObject>) const { return std::nullopt; }

  CandidateSet<DynkinObject> candidates(std::span<const DynkinObject>, std::int64_t, std::int64_t) const {
    return {cat_.indecomposables(), true, true};
  }
  const std::vector<DynkinObject>& exceptional_objects() const { return cat_.indecomposables(); }

 private:
  DynkinCategory cat_;
};

template <ExchangeBackend B>
using SetOf = RigidSet<typename B::object_type>;

/// Every element rigid and every pair compatible. Objects from another
/// backend instance raise mismatch_error.
template <ExchangeBackend B>
bool is_rigid_set(const B& b, const SetOf<B>& s) {
  for (const auto& o : s) b.check(o);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!b.is_rigid(s[i])) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!b.compatible(s[i], s[j])) return false;
  }
  return true;
}

/// Rigid with as many summands as the rank of the Grothendieck group.
template <ExchangeBackend B>
bool is_tilting(const B& b, const SetOf<B>& s) {
  return s.size() == b.tilting_size() && is_rigid_set(b, s);
}

inline RigidSet<Sheaf> canonical_tilting(const CohBackend& b) {
  const WeightType& w = b.weight();
  std::vector<Sheaf> elems{Sheaf::line(LElement::zero(w)), Sheaf::line(LElement::canonical(w))};
  for (std::size_t i = 0; i < w.t(); ++i)
    for (int a = 1; a < w.p(i); ++a) elems.push_back(Sheaf::line(a * LElement::generator(w, i)));
  RigidSet<Sheaf> s(std::move(elems));
  if (!is_tilting(b, s)) throw internal_error("canonical set is not tilting for " + b.name());
  return s;
}

inline RigidSet<DynkinObject> canonical_tilting(const DynkinBackend& b) {
  std::vector<DynkinObject> elems;
  for (int i = 0; i < b.quiver().n(); ++i) elems.push_back(DynkinObject::shifted_projective(i));
  RigidSet<DynkinObject> s(std::move(elems));
  if (!is_tilting(b, s)) throw internal_error("shifted projectives are not cluster-tilting");
  return s;
}

template <class Object>
struct ComplementSearch {
  std::vector<Object> found;
  /// Every possible complement in the modeled universe was examined.
  bool exhaustive = false;
  /// The full compatibility band was inside the window (coh only).
  bool band_searched = false;
};

/// All complements of s \ {s[k]} other than s[k] among the backend's
/// candidates, using the explicit range [lo, hi] for line bundles.
template <ExchangeBackend B>
ComplementSearch<typename B::object_type> complements_in(const B& b, const SetOf<B>& s, std::size_t k, std::int64_t lo,
                                                         std::int64_t hi) {
  using Object = typename B::object_type;
  if (k >= s.size()) throw domain_error("summand index out of range");
  const std::vector<Object> rest = s.without(k);
  auto cs = b.candidates(std::span<const Object>(rest), lo, hi);
  ComplementSearch<Object> out;
  out.exhaustive = cs.exhaustive;
  out.band_searched = cs.band_searched;
  for (const auto& c : cs.objects) {
    if (c == s[k] || std::binary_search(rest.begin(), rest.end(), c)) continue;
    if (!b.is_rigid(c)) continue;
    bool ok = true;
    for (const auto& r : rest)
      if (!b.compatible(c, r)) {
        ok = false;
        break;
      }
    if (ok) out.found.push_back(c);
  }
  return out;
}

/// Complement search honoring the window policy (automatic widening).
template <ExchangeBackend B>
ComplementSearch<typename B::object_type> complements(const B& b, const SetOf<B>& s, std::size_t k,
                                                      const SearchWindow& window = SearchWindow::automatic()) {
  if (!b.uses_window() || window.is_explicit())
    return complements_in(b, s, k, window.lo.value_or(0), window.hi.value_or(0));
  auto r = b.line_range(std::span(s.elements()));
  std::int64_t lo = r ? r->first : 0, hi = r ? r->second : 0;
  std::int64_t margin = 2 + (hi - lo);
  while (true) {
    auto found = complements_in(b, s, k, lo - margin, hi + margin);
    if (!found.found.empty() || found.band_searched || margin >= window.max_margin) return found;
    margin = std::min(2 * margin, window.max_margin);
  }
}

template <class Object>
struct Mutation {
  RigidSet<Object> result;
  Object out;
  Object in;
  /// Index of `in` within `result`.
  std::size_t new_index = 0;
};

/// Replaces the k-th summand of a tilting set by its unique other complement.
template <ExchangeBackend B>
Mutation<typename B::object_type> mutate(const B& b, const SetOf<B>& s, std::size_t k,
                                         const SearchWindow& window = SearchWindow::automatic()) {
  if (k >= s.size()) throw domain_error("summand index out of range");
  if (!is_tilting(b, s)) throw not_tilting("not a tilting set: " + s.key());
  auto search = complements(b, s, k, window);
  if (search.found.size() > 1)
    throw internal_error("more than one complement for " + s[k].to_string() + " in " + s.key());
  if (search.found.empty()) {
    const std::string reason = search.band_searched ? "fragment" : "window";
    throw complement_not_in_window(
        "no complement of " + s[k].to_string() + " found (" + reason + ") in " + s.key(), reason);
  }
  std::vector<typename B::object_type> elems = s.without(k);
  elems.push_back(search.found.front());
  Mutation<typename B::object_type> m{RigidSet<typename B::object_type>(std::move(elems)), s[k], search.found.front(), 0};
  m.new_index = *m.result.index_of(m.in);
  if (!is_tilting(b, m.result)) throw internal_error("mutation produced a non-tilting set");
  return m;
}

/// Adds candidates in order whenever they keep the set rigid. Window-bounded:
/// the result need not be tilting.
template <ExchangeBackend B>
SetOf<B> greedy_completion(const B& b, const SetOf<B>& start, std::span<const typename B::object_type> candidates) {
  std::vector<typename B::object_type> elems = start.elements();
  for (const auto& c : candidates) {
    if (elems.size() >= b.tilting_size()) break;
    if (std::find(elems.begin(), elems.end(), c) != elems.end() || !b.is_rigid(c)) continue;
    if (std::all_of(elems.begin(), elems.end(), [&](const auto& e) { return b.compatible(c, e); })) elems.push_back(c);
  }
  return SetOf<B>(std::move(elems));
}

}  // namespace tilt
