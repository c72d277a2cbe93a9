#include "hypergame/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace hypergame {

namespace {

std::vector<Point> sorted_unique(std::span<const Point> universe) {
  std::vector<Point> pts(universe.begin(), universe.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Point> grid_points(const Space& grid) {
  if (grid.kind() != Space::Kind::finite_grid) throw OracleRefused("oracle runs on finite-grid spaces only");
  if (grid.resolution() + 1 > kMaxEnumerationPoints) {
    throw OracleRefused(grid.name() + " has " + std::to_string(grid.resolution() + 1) + " points; the oracle bound is " +
                        std::to_string(kMaxEnumerationPoints));
  }
  return grid.points();
}

void require_exhaustive_size(std::size_t n) {
  if (n > kMaxExhaustivePoints) {
    throw OracleRefused("exhaustive checks need at most " + std::to_string(kMaxExhaustivePoints) + " points, got " +
                        std::to_string(n));
  }
}

Scalar gap(const Point& x, const Point& y) {
  Scalar d = x.x - y.x;
  return d < 0 ? Scalar(-d) : d;
}

// max over K of min over L, written out pairwise.
Scalar directed(const FiniteCompact& k, const FiniteCompact& l) {
  Scalar worst = 0;
  for (const Point& x : k) {
    Scalar best = -1;
    for (const Point& y : l) {
      const Scalar d = gap(x, y);
      if (best < 0 || d < best) best = d;
    }
    if (best > worst) worst = best;
  }
  return worst;
}

Scalar reference_hausdorff(const FiniteCompact& k, const FiniteCompact& l) {
  if (k.empty() && l.empty()) return 0;
  if (k.empty() || l.empty()) return 1;
  return std::max(directed(k, l), directed(l, k));
}

// The universe on a common denominator, so the reference distance runs on integers.
struct ScaledUniverse {
  long den = 1;
  std::vector<long> coord;

  explicit ScaledUniverse(const std::vector<Point>& pts) {
    mpz_class lcm = 1;
    for (const Point& p : pts) lcm = lcm * p.x.get_den() / gcd(lcm, p.x.get_den());
    if (!lcm.fits_slong_p()) throw OracleRefused("universe denominators are too large");
    den = lcm.get_si();
    for (const Point& p : pts) coord.push_back(mpz_class(p.x.get_num() * (lcm / p.x.get_den())).get_si());
  }

  // Reference distance between the subsets with bitmasks a and b, times den.
  long distance(std::size_t a, std::size_t b) const {
    if (a == 0 && b == 0) return 0;
    if (a == 0 || b == 0) return den;
    return std::max(directed(a, b), directed(b, a));
  }

  long directed(std::size_t a, std::size_t b) const {
    long worst = 0;
    for (std::size_t i = 0; i < coord.size(); ++i) {
      if (!(a >> i & 1)) continue;
      long best = -1;
      for (std::size_t j = 0; j < coord.size(); ++j) {
        if (!(b >> j & 1)) continue;
        const long d = std::abs(coord[i] - coord[j]);
        if (best < 0 || d < best) best = d;
      }
      worst = std::max(worst, best);
    }
    return worst;
  }
};

std::string show(const FiniteCompact& k) {
  std::string out = "{";
  bool first = true;
  for (const Point& p : k) {
    out += (first ? "" : ",") + to_string(p.x);
    first = false;
  }
  return out + "}";
}

std::string show(std::span<const FiniteCompact> prefix) {
  std::string out = "(";
  for (std::size_t i = 0; i < prefix.size(); ++i) out += (i ? "," : "") + show(prefix[i]);
  return out + ")";
}

template <class Ball>
bool member(const Ball& ball, std::span<const FiniteCompact> prefix) {
  if (prefix.size() < ball.index()) return false;
  for (std::size_t n = 1; n <= ball.index(); ++n) {
    if (reference_hausdorff(prefix[n - 1], ball.at(n)) > ball.radius) return false;
  }
  if constexpr (std::is_same_v<Ball, IncreasingBall>) {
    for (std::size_t n = 1; n < prefix.size(); ++n) {
      if (!std::includes(prefix[n].begin(), prefix[n].end(), prefix[n - 1].begin(), prefix[n - 1].end())) return false;
    }
  }
  return true;
}

template <class Ball>
void check_pair(const std::vector<FiniteCompact>& subsets, const Ball& inner, const Ball& outer, OracleReport& report) {
  if (inner.index() > 2) throw OracleRefused("nesting soundness enumerates prefixes of index at most 2");
  if (!legal_nesting(inner, outer)) return;

  // Candidate sets per coordinate, then every prefix of length inner.index().
  std::vector<std::vector<const FiniteCompact*>> options(inner.index());
  for (std::size_t n = 1; n <= inner.index(); ++n) {
    for (const auto& s : subsets) {
      if (reference_hausdorff(s, inner.at(n)) <= inner.radius) options[n - 1].push_back(&s);
    }
  }
  std::vector<std::size_t> pick(inner.index(), 0);
  if (std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) return;
  while (true) {
    std::vector<FiniteCompact> prefix;
    for (std::size_t n = 0; n < pick.size(); ++n) prefix.push_back(*options[n][pick[n]]);
    if (member(inner, prefix)) {
      ++report.cases;
      if (!member(outer, prefix)) report.fail("prefix " + show(prefix) + " is in the inner ball but not the outer one");
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

}  // namespace

void OracleReport::fail(std::string example) {
  ++failures;
  if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(example));
}

std::vector<FiniteCompact> enumerate_compacts(std::span<const Point> universe) {
  const std::vector<Point> pts = sorted_unique(universe);
  if (pts.size() > kMaxEnumerationPoints) {
    throw OracleRefused("universe has " + std::to_string(pts.size()) + " points; the oracle bound is " +
                        std::to_string(kMaxEnumerationPoints));
  }
  std::vector<FiniteCompact> out;
  const std::size_t count = std::size_t{1} << pts.size();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Point> members;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (mask >> i & 1) members.push_back(pts[i]);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<FiniteCompact> enumerate_compacts(const Space& grid) {
  const std::vector<Point> pts = grid_points(grid);
  return enumerate_compacts(std::span<const Point>(pts));
}

std::vector<OracleReport> verify_hausdorff_axioms(std::span<const Point> universe, SetMetric metric) {
  require_exhaustive_size(sorted_unique(universe).size());
  if (!metric) {
    metric = [space = Space::unit_interval()](const FiniteCompact& k, const FiniteCompact& l) {
      return hausdorff(space, k, l);
    };
  }
  const std::vector<FiniteCompact> subsets = enumerate_compacts(universe);
  const std::size_t n = subsets.size();
  const ScaledUniverse scaled_universe(sorted_unique(universe));

  std::vector<Scalar> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = metric(subsets[i], subsets[j]);
  }

  OracleReport identity{"identity"}, symmetry{"symmetry"}, nonneg{"nonnegativity"}, triangle{"triangle"},
      reference{"definition"};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& dij = d[i * n + j];
      const std::string pair = show(subsets[i]) + ", " + show(subsets[j]);
      ++identity.cases;
      if ((dij == 0) != (i == j)) identity.fail("d(" + pair + ") = " + to_string(dij));
      ++symmetry.cases;
      if (dij != d[j * n + i]) symmetry.fail("d(" + pair + ") != d in reverse order");
      ++nonneg.cases;
      if (dij < 0) nonneg.fail("d(" + pair + ") = " + to_string(dij));
      ++reference.cases;
      Scalar expected(mpz_class(scaled_universe.distance(i, j)), mpz_class(scaled_universe.den));
      expected.canonicalize();
      if (dij != expected) reference.fail("d(" + pair + ") = " + to_string(dij) + ", expected " + to_string(expected));
    }
  }

  // Triangle inequality on integers: scale every distance by the common denominator.
  mpz_class lcm = 1;
  for (const Scalar& v : d) lcm = lcm * v.get_den() / gcd(lcm, v.get_den());
  std::vector<long> scaled(n * n);
  bool fits = true;
  for (std::size_t i = 0; i < d.size() && fits; ++i) {
    const mpz_class v = d[i].get_num() * (lcm / d[i].get_den());
    fits = v.fits_slong_p();
    if (fits) scaled[i] = v.get_si();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const long dik = scaled[i * n + k];
      for (std::size_t j = 0; j < n; ++j) {
        ++triangle.cases;
        const bool ok = fits ? dik <= scaled[i * n + j] + scaled[j * n + k]
                             : d[i * n + k] <= d[i * n + j] + d[j * n + k];
        if (!ok) {
          triangle.fail("d(" + show(subsets[i]) + ", " + show(subsets[k]) + ") exceeds the path through " +
                        show(subsets[j]));
        }
      }
    }
  }
  return {identity, symmetry, nonneg, triangle, reference};
}

std::vector<OracleReport> verify_hausdorff_axioms(const Space& grid, SetMetric metric) {
  const std::vector<Point> pts = grid_points(grid);
  return verify_hausdorff_axioms(std::span<const Point>(pts), std::move(metric));
}

OracleReport verify_characterization(std::span<const Point> universe, std::span<const Scalar> radii) {
  require_exhaustive_size(sorted_unique(universe).size());
  const Space space = Space::unit_interval();
  const std::vector<FiniteCompact> subsets = enumerate_compacts(universe);
  OracleReport report{"characterization"};
  for (const Scalar& r : radii) {
    if (r <= 0 || r >= 1) throw OracleRefused("radius " + to_string(r) + " is outside (0,1)");
  }
  for (const auto& k : subsets) {
    for (const auto& l : subsets) {
      const Scalar d = hausdorff(space, k, l);
      for (const Scalar& r : radii) {
        ++report.cases;
        const bool close = d <= r;
        const bool dilated = within_dilation(space, k, l, r) && within_dilation(space, l, k, r);
        if (close != dilated) {
          report.fail("K=" + show(k) + " L=" + show(l) + " r=" + to_string(r) + ": distance test " +
                      (close ? "true" : "false") + ", dilation test " + (dilated ? "true" : "false"));
        }
      }
    }
  }
  return report;
}

OracleReport verify_characterization(const Space& grid, std::span<const Scalar> radii) {
  const std::vector<Point> pts = grid_points(grid);
  return verify_characterization(std::span<const Point>(pts), radii);
}

OracleReport verify_nesting_soundness(std::span<const Point> universe, std::span<const BallPair> pairs) {
  const std::vector<FiniteCompact> subsets = enumerate_compacts(universe);
  OracleReport report{"nesting_soundness"};
  for (const auto& pair : pairs) {
    std::visit([&](const auto& p) { check_pair(subsets, p.first, p.second, report); }, pair);
  }
  return report;
}

}  // namespace hypergame
