#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypergame/balls.hpp"

namespace hypergame {

// (first, second): the bucket index of a point in the product-ball prefix and
// the least index at which it appears in the increasing-ball prefix.
struct Affiliation {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Affiliation&, const Affiliation&) = default;
};

// Sorted by point.
using AffiliationTable = std::vector<std::pair<Point, Affiliation>>;

const Affiliation* find_affiliation(const AffiliationTable& table, const Point& p);

// child -> parent links with the closed-ball radius that witnesses them.
struct ParentMap {
  std::vector<std::pair<Point, Point>> links;  // sorted by child
  Scalar threshold;

  const Point* parent_of(const Point& child) const;
  bool empty() const { return links.empty(); }
};

// Test hooks that deliberately break the construction.
enum class Fault {
  none,
  skip_dummy_bucket,       // reverse transfer drops points bound for bucket b̃
  open_parent_threshold,   // parents must satisfy rho < threshold instead of <=
  rtilde_equals_r,         // forward transfer keeps r̃ = r
};

class TransferError : public std::runtime_error {
 public:
  enum class Kind { invalid_input, missing_parent, ambiguous_parent, radius_gap, broken_chain };

  TransferError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ForwardResult {
  IncreasingBall ball;            // (K̃_n), ã, r̃
  AffiliationTable affiliations;  // for points of K̃_ã
  ParentMap parents;              // empty on a first move
};

struct ReverseResult {
  ProductBall ball;               // (L̃_n), b̃, s̃
  AffiliationTable affiliations;  // for points of L_b
  ParentMap parents;              // empty on a first move
  std::vector<Point> dummy_points;  // points placed in bucket b̃
};

// K^N move -> K↗^N move.
ForwardResult forward_transfer_first(const ProductBall& kball);
ForwardResult forward_transfer(const ProductBall& kball, const IncreasingBall& prev_lball,
                               const ProductBall& prev_ltilde, Fault fault = Fault::none);

// K↗^N move -> K^N move.
ReverseResult reverse_transfer_first(const IncreasingBall& lball);
ReverseResult reverse_transfer(const IncreasingBall& lball, const ProductBall& prev_kball,
                               const IncreasingBall& prev_ktilde, Fault fault = Fault::none);

// Affiliations of the points of ⋃K_n given a product ball and its partner
// increasing ball. `second` is 0 when the point is missing from the partner.
AffiliationTable product_row_affiliations(const ProductBall& k, const IncreasingBall& k_tilde);
// Affiliations of the points of L_b: first from (L̃_n), second from (L_n).
// `first` is 0 when the point is in no bucket.
AffiliationTable increasing_row_affiliations(const ProductBall& l_tilde, const IncreasingBall& l);

// d(K̃_n, L_n) <= s̃ for n = 1..b.
bool forward_claim_holds(const IncreasingBall& k_tilde, const IncreasingBall& prev_lball,
                         const ProductBall& prev_ltilde);
// d(L̃_n, K_n) <= r̃ for n = 1..a.
bool reverse_claim_holds(const ProductBall& l_tilde, const ProductBall& prev_kball,
                         const IncreasingBall& prev_ktilde);

enum class Direction {
  fig1,  // real game on K^N; Player II plays a K↗^N strategy through the transfers
  fig2,  // real game on K↗^N; Player II plays a K^N strategy through the transfers
};

// One stage: the K row (K, K̃) and the L row (L̃, L) with their bookkeeping.
struct StageRecord {
  std::size_t stage = 0;
  ProductBall k;
  IncreasingBall k_tilde;
  IncreasingBall l;
  ProductBall l_tilde;
  AffiliationTable k_affiliations;
  AffiliationTable l_affiliations;
  ParentMap forward_parents;  // points of ⋃K_n -> points of L_b (previous L row)
  ParentMap reverse_parents;  // points of L_b -> points of K̃_ã (previous K row)
  std::vector<Point> dummy_points;
};

struct NamedCheck {
  std::string name;
  bool pass;
};

// The three (⋆) conditions, evaluated separately for the K row and the L row.
std::vector<NamedCheck> check_star(const StageRecord& record);

struct AncestorChain {
  std::vector<Point> points;  // from the queried point back to its ancestor
  Scalar bound;               // 2 r̃ at to_stage; distance(front, back) < bound
};

// Follows parent maps from a point of ⋃K_n at `from_stage` back to a point of
// ⋃K_n at `to_stage` (stages are 1-based). Throws TransferError::broken_chain
// when a link is missing.
AncestorChain ancestor_chain(std::span<const StageRecord> records, Direction direction, const Point& point,
                             std::size_t from_stage, std::size_t to_stage);

}  // namespace hypergame
