#include "hypergame/transfer.hpp"

#include <algorithm>

namespace hypergame {

namespace {

const Space kInterval = Space::unit_interval();

using IndexTable = std::vector<std::pair<Point, std::size_t>>;

// For each point of ⋃ prefix, the least 1-based index of a set containing it.
IndexTable first_appearance(std::span<const FiniteCompact> prefix) {
  IndexTable table, merged;
  for (std::size_t n = 0; n < prefix.size(); ++n) {
    merged.clear();
    merged.reserve(table.size() + prefix[n].size());
    auto it = table.begin();
    for (const Point& p : prefix[n]) {
      for (; it != table.end() && it->first < p; ++it) merged.push_back(std::move(*it));
      if (it != table.end() && it->first == p) continue;
      merged.emplace_back(p, n + 1);
    }
    for (; it != table.end(); ++it) merged.push_back(std::move(*it));
    table.swap(merged);
  }
  return table;
}

std::size_t lookup(const IndexTable& table, const Point& p) {
  auto it = std::lower_bound(table.begin(), table.end(), p,
                             [](const auto& entry, const Point& q) { return entry.first < q; });
  return (it != table.end() && it->first == p) ? it->second : 0;
}

// The unique point of `candidates` within `threshold` of x.
Point find_parent(const Point& x, const FiniteCompact& candidates, const Scalar& threshold, bool open) {
  const auto pts = candidates.points();
  const Point low(Scalar(x.x - threshold));
  std::vector<Point> hits;
  for (auto it = std::lower_bound(pts.begin(), pts.end(), low); it != pts.end(); ++it) {
    const Scalar d = distance(kInterval, x, *it);
    if (it->x > x.x && d > threshold) break;
    if (open ? d < threshold : d <= threshold) hits.push_back(*it);
  }
  if (hits.empty()) {
    throw TransferError(TransferError::Kind::missing_parent,
                        "no parent within " + to_string(threshold) + " of " + to_string(x.x) +
                            " (the move is not legally nested in the previous one)");
  }
  if (hits.size() > 1) {
    throw TransferError(TransferError::Kind::ambiguous_parent,
                        "point " + to_string(x.x) + " has " + std::to_string(hits.size()) + " candidate parents within " +
                            to_string(threshold) + " (separation invariant violated)");
  }
  return hits.front();
}

template <class Ball>
void require_valid(const Ball& ball, const char* role) {
  const ValidityReport report = validate(ball);
  if (report.empty()) return;
  std::string what = std::string("invalid ") + role + ":";
  for (const auto& issue : report) what += " [" + issue.check + "] " + issue.detail + ";";
  throw TransferError(TransferError::Kind::invalid_input, what);
}

std::vector<FiniteCompact> cumulative_unions(std::span<const FiniteCompact> sets) {
  std::vector<FiniteCompact> out;
  out.reserve(sets.size());
  FiniteCompact acc;
  for (const auto& s : sets) {
    acc = set_union(acc, s);
    out.push_back(acc);
  }
  return out;
}

void sort_links(ParentMap& map) {
  std::sort(map.links.begin(), map.links.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

const Affiliation* find_affiliation(const AffiliationTable& table, const Point& p) {
  auto it = std::lower_bound(table.begin(), table.end(), p,
                             [](const auto& entry, const Point& q) { return entry.first < q; });
  return (it != table.end() && it->first == p) ? &it->second : nullptr;
}

const Point* ParentMap::parent_of(const Point& child) const {
  auto it = std::lower_bound(links.begin(), links.end(), child,
                             [](const auto& entry, const Point& q) { return entry.first < q; });
  return (it != links.end() && it->first == child) ? &it->second : nullptr;
}

AffiliationTable product_row_affiliations(const ProductBall& k, const IncreasingBall& k_tilde) {
  const IndexTable firsts = first_appearance(k.prefix);
  const IndexTable seconds = first_appearance(k_tilde.prefix);
  AffiliationTable table;
  table.reserve(firsts.size());
  for (const auto& [p, n1] : firsts) table.push_back({p, {n1, lookup(seconds, p)}});
  return table;
}

AffiliationTable increasing_row_affiliations(const ProductBall& l_tilde, const IncreasingBall& l) {
  AffiliationTable table;
  if (l.index() == 0) return table;
  const IndexTable firsts = first_appearance(l_tilde.prefix);
  const IndexTable seconds = first_appearance(l.prefix);
  for (const Point& p : l.prefix.back()) table.push_back({p, {lookup(firsts, p), lookup(seconds, p)}});
  return table;
}

ForwardResult forward_transfer_first(const ProductBall& kball) {
  require_valid(kball, "product move");
  ForwardResult out;
  out.ball.prefix = cumulative_unions(kball.prefix);
  out.ball.radius = kball.radius / 2;
  out.affiliations = product_row_affiliations(kball, out.ball);
  return out;
}

ForwardResult forward_transfer(const ProductBall& kball, const IncreasingBall& prev_lball,
                               const ProductBall& prev_ltilde, Fault fault) {
  require_valid(kball, "product move");
  require_valid(prev_lball, "previous increasing move");
  require_valid(prev_ltilde, "previous transferred move");

  const Scalar& s = prev_lball.radius;
  const Scalar& s_tilde = prev_ltilde.radius;
  if (s - s_tilde <= 0) {
    throw TransferError(TransferError::Kind::radius_gap, "s - s̃ = " + to_string(Scalar(s - s_tilde)) + " is not positive");
  }

  const std::size_t a = kball.index();
  const std::size_t b_tilde = prev_ltilde.index();
  const std::size_t bucketed = std::min(a, b_tilde);
  const FiniteCompact& l_last = prev_lball.prefix.back();
  const IndexTable l_second = first_appearance(prev_lball.prefix);

  ForwardResult out;
  out.parents.threshold = s_tilde;
  out.ball.radius = fault == Fault::rtilde_equals_r ? kball.radius : std::min(Scalar(s - s_tilde), Scalar(kball.radius / 2));

  // Second affiliation of each bucketed point is inherited from its parent.
  std::vector<std::pair<Point, std::size_t>> inherited;
  for (std::size_t n = 1; n <= bucketed; ++n) {
    for (const Point& x : kball.at(n)) {
      const Point y = find_parent(x, l_last, s_tilde, fault == Fault::open_parent_threshold);
      out.parents.links.emplace_back(x, y);
      inherited.emplace_back(x, lookup(l_second, y));
    }
  }
  sort_links(out.parents);

  const std::vector<FiniteCompact> tails = cumulative_unions(kball.prefix);
  out.ball.prefix.reserve(a);
  for (std::size_t n = 1; n <= a; ++n) {
    if (n > b_tilde) {
      out.ball.prefix.push_back(tails[n - 1]);
      continue;
    }
    std::vector<Point> members;
    for (const auto& [x, n2] : inherited) {
      if (n2 <= n) members.push_back(x);
    }
    out.ball.prefix.emplace_back(std::move(members));
  }
  out.affiliations = product_row_affiliations(kball, out.ball);
  return out;
}

ReverseResult reverse_transfer_first(const IncreasingBall& lball) {
  require_valid(lball, "increasing move");
  ReverseResult out;
  out.ball.radius = lball.radius / 2;
  out.ball.prefix.reserve(lball.index());
  for (std::size_t n = 1; n <= lball.index(); ++n) {
    out.ball.prefix.push_back(n == 1 ? lball.at(1) : set_difference(lball.at(n), lball.at(n - 1)));
  }
  out.affiliations = increasing_row_affiliations(out.ball, lball);
  return out;
}

ReverseResult reverse_transfer(const IncreasingBall& lball, const ProductBall& prev_kball,
                               const IncreasingBall& prev_ktilde, Fault fault) {
  require_valid(lball, "increasing move");
  require_valid(prev_kball, "previous product move");
  require_valid(prev_ktilde, "previous transferred move");

  const Scalar& r = prev_kball.radius;
  const Scalar& r_tilde = prev_ktilde.radius;
  if (r - r_tilde <= 0) {
    throw TransferError(TransferError::Kind::radius_gap, "r - r̃ = " + to_string(Scalar(r - r_tilde)) + " is not positive");
  }

  const std::size_t a_tilde = prev_ktilde.index();
  const std::size_t b = lball.index();
  const std::size_t b_tilde = b + 1;
  const FiniteCompact& k_union = prev_ktilde.prefix.back();
  const IndexTable k_first = first_appearance(prev_kball.prefix);
  const IndexTable k_second = first_appearance(prev_ktilde.prefix);
  const IndexTable l_second = first_appearance(lball.prefix);

  ReverseResult out;
  out.parents.threshold = r_tilde;
  out.ball.radius = std::min(Scalar(r - r_tilde), Scalar(lball.radius / 2));

  std::vector<std::vector<Point>> buckets(b_tilde);
  for (const Point& x : lball.prefix.back()) {
    const std::size_t n2 = lookup(l_second, x);
    std::size_t n1 = n2;
    if (n2 <= a_tilde) {
      const Point y = find_parent(x, k_union, r_tilde, fault == Fault::open_parent_threshold);
      out.parents.links.emplace_back(x, y);
      if (lookup(k_second, y) == n2) {
        n1 = lookup(k_first, y);
        if (n1 == 0) {
          throw TransferError(TransferError::Kind::invalid_input,
                              "parent " + to_string(y.x) + " is not a point of the previous product move");
        }
      } else {
        n1 = b_tilde;
        if (fault == Fault::skip_dummy_bucket) continue;
        out.dummy_points.push_back(x);
      }
    }
    buckets[n1 - 1].push_back(x);
  }
  sort_links(out.parents);

  out.ball.prefix.reserve(b_tilde);
  for (auto& bucket : buckets) out.ball.prefix.emplace_back(std::move(bucket));
  out.affiliations = increasing_row_affiliations(out.ball, lball);
  return out;
}

bool forward_claim_holds(const IncreasingBall& k_tilde, const IncreasingBall& prev_lball,
                         const ProductBall& prev_ltilde) {
  for (std::size_t n = 1; n <= prev_lball.index(); ++n) {
    if (n > k_tilde.index()) return false;
    if (hausdorff(kInterval, k_tilde.at(n), prev_lball.at(n)) > prev_ltilde.radius) return false;
  }
  return true;
}

bool reverse_claim_holds(const ProductBall& l_tilde, const ProductBall& prev_kball,
                         const IncreasingBall& prev_ktilde) {
  for (std::size_t n = 1; n <= prev_kball.index(); ++n) {
    if (n > l_tilde.index()) return false;
    if (hausdorff(kInterval, l_tilde.at(n), prev_kball.at(n)) > prev_ktilde.radius) return false;
  }
  return true;
}

std::vector<NamedCheck> check_star(const StageRecord& rec) {
  const std::size_t a = rec.k.index();
  const std::size_t a_tilde = rec.k_tilde.index();
  const std::size_t b = rec.l.index();
  const std::size_t b_tilde = rec.l_tilde.index();

  bool star2_k = true;
  FiniteCompact acc;
  for (std::size_t n = 1; n <= a && star2_k; ++n) {
    acc = set_union(acc, rec.k.at(n));
    star2_k = n <= a_tilde && is_subset(acc, rec.k_tilde.at(n));
  }
  bool star2_l = true;
  acc = FiniteCompact();
  for (std::size_t n = 1; n <= b && star2_l; ++n) {
    acc = set_union(acc, n <= b_tilde ? rec.l_tilde.at(n) : FiniteCompact());
    star2_l = n <= b_tilde && is_subset(acc, rec.l.at(n));
  }

  const bool star3_k = a_tilde > 0 && union_of(rec.k.prefix) == rec.k_tilde.prefix.back();
  const bool star3_l = b > 0 && union_of(rec.l_tilde.prefix) == rec.l.prefix.back();

  return {
      {"star1.k", a_tilde >= a && rec.k_tilde.radius <= rec.k.radius / 2},
      {"star1.l", b_tilde >= b && rec.l_tilde.radius <= rec.l.radius / 2},
      {"star2.k", star2_k},
      {"star2.l", star2_l},
      {"star3.k", star3_k},
      {"star3.l", star3_l},
  };
}

AncestorChain ancestor_chain(std::span<const StageRecord> records, Direction direction, const Point& point,
                             std::size_t from_stage, std::size_t to_stage) {
  if (from_stage == 0 || from_stage > records.size() || to_stage == 0 || to_stage > from_stage) {
    throw TransferError(TransferError::Kind::invalid_input,
                        "ancestor_chain: stages must satisfy 1 <= to <= from <= " + std::to_string(records.size()));
  }
  const auto& sets = records[from_stage - 1].k.prefix;
  if (std::none_of(sets.begin(), sets.end(), [&](const FiniteCompact& s) { return s.contains(point); })) {
    throw TransferError(TransferError::Kind::invalid_input,
                        "point " + to_string(point.x) + " is not in the stage " + std::to_string(from_stage) + " move");
  }

  AncestorChain chain;
  chain.points.push_back(point);
  chain.bound = 2 * records[to_stage - 1].k_tilde.radius;
  Point current = point;
  for (std::size_t m = from_stage; m > to_stage; --m) {
    const Point* y = records[m - 1].forward_parents.parent_of(current);
    if (!y) {
      throw TransferError(TransferError::Kind::broken_chain,
                          "no forward parent for " + to_string(current.x) + " at stage " + std::to_string(m));
    }
    chain.points.push_back(*y);
    const StageRecord& l_row = direction == Direction::fig1 ? records[m - 2] : records[m - 1];
    const Point* z = l_row.reverse_parents.parent_of(*y);
    if (!z) {
      throw TransferError(TransferError::Kind::broken_chain,
                          "no reverse parent for " + to_string(y->x) + " at stage " + std::to_string(l_row.stage));
    }
    chain.points.push_back(*z);
    current = *z;
  }
  return chain;
}

}  // namespace hypergame
