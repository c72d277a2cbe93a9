#include "hypergame/harness.hpp"

#include <algorithm>

namespace hypergame {

namespace {

const Space kInterval = Space::unit_interval();

struct Pairing {
  const StageRecord* forward_against = nullptr;  // record holding the (L, L̃) used by the forward transfer
  const StageRecord* reverse_against = nullptr;  // record holding the (K, K̃) used by the reverse transfer
};

Pairing pairing(std::span<const StageRecord> records, Direction dir, std::size_t i) {
  Pairing p;
  if (dir == Direction::fig1) {
    p.forward_against = i > 0 ? &records[i - 1] : nullptr;
    p.reverse_against = &records[i];
  } else {
    p.forward_against = &records[i];
    p.reverse_against = i > 0 ? &records[i - 1] : nullptr;
  }
  return p;
}

bool affiliations_ordered(const AffiliationTable& table) {
  return std::all_of(table.begin(), table.end(), [](const auto& e) {
    return e.second.first >= 1 && e.second.second >= 1 && e.second.first >= e.second.second;
  });
}

bool is_partition(std::span<const FiniteCompact> buckets, const FiniteCompact& whole) {
  std::size_t total = 0;
  for (const auto& b : buckets) total += b.size();
  const FiniteCompact joined = union_of(buckets);
  return joined.size() == total && joined == whole;
}

// Each link is within the threshold, its parent is the only candidate within
// it, and every child that should have a parent has one.
bool parents_sound(const ParentMap& map, const std::vector<Point>& children, const FiniteCompact& candidates) {
  if (map.links.size() != children.size()) return false;
  for (const Point& child : children) {
    const Point* parent = map.parent_of(child);
    if (!parent || !candidates.contains(*parent)) return false;
    // Candidates are sorted, so the ones within the threshold are contiguous.
    const auto pts = candidates.points();
    const Point low(Scalar(child.x - map.threshold));
    std::size_t within = 0;
    for (auto it = std::lower_bound(pts.begin(), pts.end(), low); it != pts.end(); ++it) {
      if (distance(kInterval, child, *it) > map.threshold) break;
      ++within;
    }
    if (within != 1 || distance(kInterval, child, *parent) > map.threshold) return false;
  }
  return true;
}

}  // namespace

const char* to_string(Direction direction) { return direction == Direction::fig1 ? "fig1" : "fig2"; }

Direction parse_direction(std::string_view text) {
  if (text == "fig1") return Direction::fig1;
  if (text == "fig2") return Direction::fig2;
  throw std::invalid_argument("direction must be fig1 or fig2");
}

std::vector<ProductBall> ComposedGame::product_moves() const {
  std::vector<ProductBall> out;
  for (const auto& rec : records) {
    if (direction == Direction::fig1) {
      out.push_back(rec.k);
      out.push_back(rec.l_tilde);
    } else {
      out.push_back(rec.l_tilde);
      out.push_back(rec.k);
    }
  }
  return out;
}

std::vector<IncreasingBall> ComposedGame::increasing_moves() const {
  std::vector<IncreasingBall> out;
  for (const auto& rec : records) {
    if (direction == Direction::fig1) {
      out.push_back(rec.k_tilde);
      out.push_back(rec.l);
    } else {
      out.push_back(rec.l);
      out.push_back(rec.k_tilde);
    }
  }
  return out;
}

ComposedGame play_fig1(Strategy<ProductBall>& player_one, std::unique_ptr<Strategy<IncreasingBall>> inner,
                       std::size_t rounds, Fault fault) {
  auto composed = compose_for_product_game(std::move(inner), fault);
  const Transcript<ProductBall> t = play(player_one, *composed, rounds);
  return {Direction::fig1, composed->records(), t.termination};
}

ComposedGame play_fig2(Strategy<IncreasingBall>& player_one, std::unique_ptr<Strategy<ProductBall>> inner,
                       std::size_t rounds, Fault fault) {
  auto composed = compose_for_increasing_game(std::move(inner), fault);
  const Transcript<IncreasingBall> t = play(player_one, *composed, rounds);
  return {Direction::fig2, composed->records(), t.termination};
}

Scalar UnionAgreement::worst() const {
  Scalar w = 0;
  for (const auto& v : per_stage) {
    if (w < v) w = v;
  }
  return w;
}

UnionAgreement union_agreement(std::span<const StageRecord> records) {
  UnionAgreement out;
  for (const auto& rec : records) {
    const FiniteCompact joined = union_of(rec.k.prefix);
    const FiniteCompact last = rec.k_tilde.index() ? rec.k_tilde.prefix.back() : FiniteCompact();
    out.per_stage.push_back(hausdorff(kInterval, joined, last));
    FiniteCompact acc;
    for (std::size_t n = 1; n <= rec.k.index(); ++n) {
      acc = set_union(acc, rec.k.at(n));
      if (n > rec.k_tilde.index() || !is_subset(acc, rec.k_tilde.at(n))) out.prefix_containment = false;
    }
  }
  return out;
}

bool StageVerification::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
}

bool Verification::pass() const {
  return std::all_of(stages.begin(), stages.end(), [](const auto& s) { return s.pass(); }) &&
         std::all_of(global.begin(), global.end(), [](const NamedCheck& c) { return c.pass; });
}

std::vector<std::string> Verification::failing_checks() const {
  std::vector<std::string> out;
  auto note = [&](const std::string& name) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  for (const auto& c : global) {
    if (!c.pass) note(c.name);
  }
  for (const auto& s : stages) {
    for (const auto& c : s.checks) {
      if (!c.pass) note(c.name);
    }
  }
  return out;
}

bool closed_threshold_probe(Fault fault) {
  const IncreasingBall prev_l{{FiniteCompact{Point(0, 1)}}, rational(1, 5)};
  const ProductBall prev_ltilde{{FiniteCompact{Point(0, 1)}}, rational(1, 10)};
  const ProductBall k{{FiniteCompact{Point(1, 10)}}, rational(1, 100)};
  try {
    const ForwardResult out = forward_transfer(k, prev_l, prev_ltilde, fault);
    const Point* parent = out.parents.parent_of(Point(1, 10));
    return parent && *parent == Point(0, 1);
  } catch (const TransferError&) {
    return false;
  }
}

Verification verify_composed(const ComposedGame& game, const VerifyOptions& options) {
  Verification out;
  const std::span<const StageRecord> records(game.records);
  const Direction dir = game.direction;

  for (std::size_t i = 0; i < records.size(); ++i) {
    const StageRecord& rec = records[i];
    const Pairing p = pairing(records, dir, i);
    StageVerification sv;
    sv.stage = rec.stage;
    auto add = [&](std::string name, bool pass) { sv.checks.push_back({std::move(name), pass}); };

    const bool valid = validate(rec.k).empty() && validate(rec.k_tilde).empty() && validate(rec.l).empty() &&
                       validate(rec.l_tilde).empty();
    add("valid", valid);
    add("stage_index", rec.stage == i + 1);
    for (auto& c : check_star(rec)) sv.checks.push_back(std::move(c));

    const StageRecord* fwd = p.forward_against;
    const StageRecord* rev = p.reverse_against;
    add("claim.forward", !fwd || forward_claim_holds(rec.k_tilde, fwd->l, fwd->l_tilde));
    add("claim.reverse", !rev || reverse_claim_holds(rec.l_tilde, rev->k, rev->k_tilde));

    const AffiliationTable k_aff = product_row_affiliations(rec.k, rec.k_tilde);
    const AffiliationTable l_aff = increasing_row_affiliations(rec.l_tilde, rec.l);
    add("affiliation_order", affiliations_ordered(k_aff) && affiliations_ordered(l_aff));
    add("affiliations_recorded", k_aff == rec.k_affiliations && l_aff == rec.l_affiliations);

    const FiniteCompact k_union = union_of(rec.k.prefix);
    const bool k_row = rec.k_tilde.index() > 0 && k_union == rec.k_tilde.prefix.back();
    const bool l_row = rec.l.index() > 0 && is_partition(rec.l_tilde.prefix, rec.l.prefix.back());
    add("bucket_partition", k_row && l_row);
    add("first_coordinate", rec.k.index() > 0 && rec.k_tilde.index() > 0 && rec.k.at(1) == rec.k_tilde.at(1));
    add("k_tilde_increasing", is_increasing(rec.k_tilde.prefix));

    add("forward_nested", !fwd || legal_nesting(rec.k_tilde, fwd->l));
    add("reverse_nested", !rev || legal_nesting(rec.l_tilde, rev->k));
    if (dir == Direction::fig1) {
      add("inner_nested", legal_nesting(rec.l, rec.k_tilde));
      add("player1_nested", i == 0 || legal_nesting(rec.k, records[i - 1].l_tilde));
    } else {
      add("inner_nested", legal_nesting(rec.k, rec.l_tilde));
      add("player1_nested", i == 0 || legal_nesting(rec.l, records[i - 1].k_tilde));
    }

    if (i > 0) {
      const StageRecord& before = records[i - 1];
      add("radius_contraction", rec.k.radius * 4 <= before.k.radius && rec.l.radius * 4 <= before.l.radius);
    } else {
      add("radius_contraction", true);
    }

    const UnionAgreement ua = union_agreement(records.subspan(i, 1));
    add("union_agreement", ua.per_stage.front() == 0);
    add("prefix_containment", ua.prefix_containment);

    // Parent maps, recomputed from the definitions.
    bool parents_ok = true;
    if (fwd) {
      std::vector<Point> children;
      const std::size_t limit = std::min(rec.k.index(), fwd->l_tilde.index());
      for (std::size_t n = 1; n <= limit; ++n) children.insert(children.end(), rec.k.at(n).begin(), rec.k.at(n).end());
      std::sort(children.begin(), children.end());
      parents_ok = parents_ok && rec.forward_parents.threshold == fwd->l_tilde.radius &&
                   parents_sound(rec.forward_parents, children, fwd->l.prefix.back());
    }
    if (rev) {
      // Points of L_b whose least index is at most ã, i.e. L_min(ã,b).
      const auto& pts = rec.l.at(std::min(rev->k_tilde.index(), rec.l.index()));
      const std::vector<Point> children(pts.begin(), pts.end());
      parents_ok = parents_ok && rec.reverse_parents.threshold == rev->k_tilde.radius &&
                   parents_sound(rec.reverse_parents, children, rev->k_tilde.prefix.back());
    }
    add("parents_within_threshold", parents_ok);

    // Every complete ancestor chain back to stages m-1 and 1 stays within 2 r̃.
    bool chains_ok = true;
    if (i > 0) {
      for (const Point& x : k_union) {
        for (std::size_t to : {i, std::size_t{1}}) {
          try {
            const AncestorChain chain = ancestor_chain(records, dir, x, i + 1, to);
            if (!(distance(kInterval, chain.points.front(), chain.points.back()) < chain.bound)) chains_ok = false;
          } catch (const TransferError& e) {
            if (e.kind() != TransferError::Kind::broken_chain) chains_ok = false;
          }
        }
      }
    }
    add("ancestor_bound", chains_ok);

    if (options.inner_decay) {
      const Scalar& inner_radius = dir == Direction::fig1 ? rec.l.radius : rec.k.radius;
      add("decay_schedule", inner_radius <= inverse_power_of_two(rec.stage));
    }
    out.stages.push_back(std::move(sv));
  }

  out.global.push_back({"completed", game.termination.completed});
  out.global.push_back({"closed_parent_threshold", closed_threshold_probe(options.fault)});
  return out;
}

Json composed_to_json(const ComposedGame& game, const Verification& verification) {
  Json stages = Json::array();
  for (std::size_t i = 0; i < game.records.size(); ++i) {
    const std::vector<NamedCheck> none;
    stages.push_back(to_json(game.records[i], i < verification.stages.size() ? verification.stages[i].checks : none));
  }
  Json out;
  out["variant"] = game.direction == Direction::fig1 ? "product" : "increasing";
  out["direction"] = to_string(game.direction);
  out["stages"] = std::move(stages);
  if (!game.records.empty()) {
    const auto pm = game.product_moves();
    const auto im = game.increasing_moves();
    out["limit"] = {{"P", to_json(limit_estimate(std::span<const ProductBall>(pm)))},
                    {"Q", to_json(limit_estimate(std::span<const IncreasingBall>(im)))}};
  } else {
    out["limit"] = nullptr;
  }
  Json checks = Json::object();
  for (const auto& c : verification.global) checks[c.name] = c.pass;
  checks["all_stages"] = std::all_of(verification.stages.begin(), verification.stages.end(),
                                     [](const auto& s) { return s.pass(); });
  out["checks"] = std::move(checks);
  out["termination"] = to_json(game.termination);
  return out;
}

}  // namespace hypergame
