#include "hypergame/hyperspace.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace hypergame {

FiniteCompact::FiniteCompact(std::vector<Point> pts) : points_(std::move(pts)) {
  auto strictly_below = [](const Point& a, const Point& b) { return a < b; };
  const bool canonical = std::adjacent_find(points_.begin(), points_.end(), [&](const Point& a, const Point& b) {
                           return !strictly_below(a, b);
                         }) == points_.end();
  if (canonical) return;
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool FiniteCompact::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

FiniteCompact set_union(const FiniteCompact& a, const FiniteCompact& b) {
  std::vector<Point> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteCompact(std::move(out));
}

FiniteCompact set_difference(const FiniteCompact& a, const FiniteCompact& b) {
  std::vector<Point> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteCompact(std::move(out));
}

FiniteCompact set_intersection(const FiniteCompact& a, const FiniteCompact& b) {
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteCompact(std::move(out));
}

bool is_subset(const FiniteCompact& a, const FiniteCompact& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

FiniteCompact union_of(std::span<const FiniteCompact> sets) {
  std::vector<Point> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  return FiniteCompact(std::move(all));
}

namespace {

const Point* nearest(const FiniteCompact& set, const Point& p) {
  const auto pts = set.points();
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end()) return &pts.back();
  if (it == pts.begin()) return &*it;
  const Point& below = *std::prev(it);
  // Ties go to the smaller point: x - below <= above - x  <=>  2x <= below + above.
  thread_local Scalar lhs, rhs;
  lhs = p.x + p.x;
  rhs = below.x + it->x;
  return lhs <= rhs ? &below : &*it;
}

// Two coordinate systems for the sweep: exact rationals, and integers over a
// shared 2^k denominator, which covers every coordinate a game produces.
struct RationalCoords {
  std::span<const Point> k, l;

  static bool less(const Point& a, const Point& b) { return a < b; }
  static bool equal(const Point& a, const Point& b) { return a == b; }
  static void gap(Scalar& out, const Point& x, const Point& y) {
    out = x.x - y.x;
    mpq_abs(out.get_mpq_t(), out.get_mpq_t());
  }
};

struct DyadicCoords {
  std::span<const mpz_class> k, l;

  static bool less(const mpz_class& a, const mpz_class& b) { return mpz_cmp(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static bool equal(const mpz_class& a, const mpz_class& b) { return mpz_cmp(a.get_mpz_t(), b.get_mpz_t()) == 0; }
  static void gap(mpz_class& out, const mpz_class& x, const mpz_class& y) {
    mpz_sub(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    mpz_abs(out.get_mpz_t(), out.get_mpz_t());
  }
};

// Exponent e with den = 2^e, or nullopt when the denominator is not a power of two.
std::optional<mp_bitcnt_t> dyadic_exponent(const Scalar& q) {
  const mpz_srcptr den = q.get_den_mpz_t();
  if (mpz_popcount(den) != 1) return std::nullopt;
  return mpz_scan1(den, 0);
}

struct DyadicScale {
  mp_bitcnt_t exponent = 0;

  bool absorb(const Scalar& q) {
    const auto e = dyadic_exponent(q);
    if (!e) return false;
    exponent = std::max(exponent, *e);
    return true;
  }
  bool absorb(const FiniteCompact& set) {
    return std::all_of(set.begin(), set.end(), [&](const Point& p) { return absorb(p.x); });
  }
  void scale(const Scalar& q, mpz_class& out) const {
    mpz_mul_2exp(out.get_mpz_t(), q.get_num_mpz_t(), exponent - *dyadic_exponent(q));
  }
  void scale(const FiniteCompact& set, std::vector<mpz_class>& out) const {
    out.resize(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) scale(set.points()[i].x, out[i]);
  }
};

// Walks the sorted coordinates together; `visit` gets each coordinate of K
// with its distance to L (both nonempty) and stops the walk by returning false.
template <class Coords, class Gap, class Visit>
bool sweep(const Coords& c, Gap& gap, Gap& other, Visit visit) {
  std::size_t j = 0;
  for (const auto& x : c.k) {
    while (j < c.l.size() && Coords::less(c.l[j], x)) ++j;
    if (j == c.l.size()) {
      Coords::gap(gap, x, c.l.back());
    } else if (j == 0 || Coords::equal(c.l[j], x)) {
      Coords::gap(gap, x, c.l[j]);
    } else {
      Coords::gap(gap, x, c.l[j - 1]);
      Coords::gap(other, x, c.l[j]);
      if (other < gap) swap(gap, other);
    }
    if (!visit(gap)) return false;
  }
  return true;
}

struct DyadicBuffers {
  std::vector<mpz_class> k, l;
  mpz_class bound, gap, other, worst;
};

DyadicBuffers& buffers() {
  thread_local DyadicBuffers b;
  return b;
}

}  // namespace

Scalar hausdorff(const Space&, const FiniteCompact& k, const FiniteCompact& l) {
  if (k.empty() && l.empty()) return 0;
  if (k.empty() || l.empty()) return 1;
  if (k == l) return 0;

  DyadicScale scale;
  if (scale.absorb(k) && scale.absorb(l)) {
    DyadicBuffers& b = buffers();
    scale.scale(k, b.k);
    scale.scale(l, b.l);
    b.worst = 0;
    auto track = [&](const mpz_class& gap) {
      if (b.worst < gap) b.worst = gap;
      return true;
    };
    sweep(DyadicCoords{b.k, b.l}, b.gap, b.other, track);
    sweep(DyadicCoords{b.l, b.k}, b.gap, b.other, track);
    mpz_class den = 1;
    den <<= scale.exponent;
    Scalar out(b.worst, den);
    out.canonicalize();
    return out;
  }

  thread_local Scalar gap, other;
  Scalar worst = 0;
  auto track = [&](const Scalar& g) {
    if (worst < g) worst = g;
    return true;
  };
  sweep(RationalCoords{k.points(), l.points()}, gap, other, track);
  sweep(RationalCoords{l.points(), k.points()}, gap, other, track);
  return worst;
}

bool within_dilation(const Space&, const FiniteCompact& k, const FiniteCompact& l, const Scalar& r) {
  if (r < 0) throw std::invalid_argument("within_dilation: negative radius");
  if (k.empty()) return true;
  if (l.empty()) return false;

  DyadicScale scale;
  if (scale.absorb(r) && scale.absorb(k) && scale.absorb(l)) {
    DyadicBuffers& b = buffers();
    scale.scale(k, b.k);
    scale.scale(l, b.l);
    scale.scale(r, b.bound);
    return sweep(DyadicCoords{b.k, b.l}, b.gap, b.other, [&](const mpz_class& g) { return g <= b.bound; });
  }
  thread_local Scalar gap, other;
  return sweep(RationalCoords{k.points(), l.points()}, gap, other, [&](const Scalar& g) { return g <= r; });
}

std::optional<Point> nearest_point(const FiniteCompact& set, const Point& p) {
  if (set.empty()) return std::nullopt;
  return *nearest(set, p);
}

Scalar interval_measure(const FiniteCompact& k, const Scalar& r) {
  if (r < 0) throw std::invalid_argument("interval_measure: negative radius");
  Scalar total = 0;
  bool open = false;
  Scalar lo, hi;
  for (const Point& x : k) {
    Scalar a = x.x - r;
    Scalar b = x.x + r;
    if (a < 0) a = 0;
    if (b > 1) b = 1;
    if (open && a <= hi) {
      if (hi < b) hi = b;
      continue;
    }
    if (open) total += hi - lo;
    lo = std::move(a);
    hi = std::move(b);
    open = true;
  }
  if (open) total += hi - lo;
  return total;
}

}  // namespace hypergame
