#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hypergame/balls.hpp"

namespace hypergame {

class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleReport {
  explicit OracleReport(std::string report_name = {}) : name(std::move(report_name)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // at most kMaxCounterexamples

  static constexpr std::size_t kMaxCounterexamples = 8;

  bool pass() const { return failures == 0; }
  void fail(std::string example);
};

inline constexpr std::size_t kMaxEnumerationPoints = 16;
inline constexpr std::size_t kMaxExhaustivePoints = 9;

// Every subset of `universe`, ordered by bitmask (bit i selects the i-th point
// in sorted order). Refuses universes above kMaxEnumerationPoints.
std::vector<FiniteCompact> enumerate_compacts(std::span<const Point> universe);
std::vector<FiniteCompact> enumerate_compacts(const Space& grid);

using SetMetric = std::function<Scalar(const FiniteCompact&, const FiniteCompact&)>;

// Identity, symmetry, nonnegativity and the triangle inequality over all
// subsets, plus agreement with a from-scratch Hausdorff distance. The metric
// defaults to the library's hausdorff on the unit interval.
std::vector<OracleReport> verify_hausdorff_axioms(std::span<const Point> universe, SetMetric metric = {});
std::vector<OracleReport> verify_hausdorff_axioms(const Space& grid, SetMetric metric = {});

// hausdorff(K,L) <= r iff K ⊂ L[r] and L ⊂ K[r], for all subset pairs and every r.
OracleReport verify_characterization(std::span<const Point> universe, std::span<const Scalar> radii);
OracleReport verify_characterization(const Space& grid, std::span<const Scalar> radii);

using BallPair = std::variant<std::pair<ProductBall, ProductBall>, std::pair<IncreasingBall, IncreasingBall>>;

// For each (inner, outer) pair accepted by legal_nesting, every prefix drawn
// from subsets of `universe` that lies in the inner ball lies in the outer one.
OracleReport verify_nesting_soundness(std::span<const Point> universe, std::span<const BallPair> pairs);

}  // namespace hypergame
