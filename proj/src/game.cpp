#include "hypergame/game.hpp"

namespace hypergame {

namespace {

template <class Ball>
void require_legal_reply(const Ball& reply, const Ball& previous) {
  const ValidityReport report = validate(reply);
  if (!report.empty()) {
    std::string what = "inner strategy produced an invalid move:";
    for (const auto& issue : report) what += " [" + issue.check + "] " + issue.detail + ";";
    throw StrategyFailure(what);
  }
  if (!legal_nesting(reply, previous)) {
    throw StrategyFailure("inner strategy produced a move not nested in the transferred move");
  }
}

}  // namespace

ProductBall ProductGameTransfer::move(std::span<const ProductBall> history) {
  if (history.empty()) throw StrategyFailure("the composed strategy only plays Player II");
  const ProductBall& k = history.back();
  StageRecord rec;
  rec.stage = records_.size() + 1;
  rec.k = k;
  try {
    ForwardResult fwd = records_.empty()
                            ? forward_transfer_first(k)
                            : forward_transfer(k, records_.back().l, records_.back().l_tilde, fault_);
    shadow_.push_back(fwd.ball);
    IncreasingBall l = inner_->move(shadow_);
    require_legal_reply(l, fwd.ball);
    shadow_.push_back(l);
    ReverseResult rev = reverse_transfer(l, k, fwd.ball, fault_);

    rec.k_tilde = std::move(fwd.ball);
    rec.k_affiliations = std::move(fwd.affiliations);
    rec.forward_parents = std::move(fwd.parents);
    rec.l = std::move(l);
    rec.l_tilde = std::move(rev.ball);
    rec.l_affiliations = std::move(rev.affiliations);
    rec.reverse_parents = std::move(rev.parents);
    rec.dummy_points = std::move(rev.dummy_points);
  } catch (const TransferError& e) {
    throw StrategyFailure(std::string("transfer failed: ") + e.what());
  }
  records_.push_back(rec);
  return rec.l_tilde;
}

IncreasingBall IncreasingGameTransfer::move(std::span<const IncreasingBall> history) {
  if (history.empty()) throw StrategyFailure("the composed strategy only plays Player II");
  const IncreasingBall& l = history.back();
  StageRecord rec;
  rec.stage = records_.size() + 1;
  rec.l = l;
  try {
    ReverseResult rev = records_.empty()
                            ? reverse_transfer_first(l)
                            : reverse_transfer(l, records_.back().k, records_.back().k_tilde, fault_);
    shadow_.push_back(rev.ball);
    ProductBall k = inner_->move(shadow_);
    require_legal_reply(k, rev.ball);
    shadow_.push_back(k);
    ForwardResult fwd = forward_transfer(k, l, rev.ball, fault_);

    rec.l_tilde = std::move(rev.ball);
    rec.l_affiliations = std::move(rev.affiliations);
    rec.reverse_parents = std::move(rev.parents);
    rec.dummy_points = std::move(rev.dummy_points);
    rec.k = std::move(k);
    rec.k_tilde = std::move(fwd.ball);
    rec.k_affiliations = std::move(fwd.affiliations);
    rec.forward_parents = std::move(fwd.parents);
  } catch (const TransferError& e) {
    throw StrategyFailure(std::string("transfer failed: ") + e.what());
  }
  records_.push_back(rec);
  return rec.k_tilde;
}

std::unique_ptr<ProductGameTransfer> compose_for_product_game(std::unique_ptr<Strategy<IncreasingBall>> inner,
                                                              Fault fault) {
  return std::make_unique<ProductGameTransfer>(std::move(inner), fault);
}

std::unique_ptr<IncreasingGameTransfer> compose_for_increasing_game(std::unique_ptr<Strategy<ProductBall>> inner,
                                                                    Fault fault) {
  return std::make_unique<IncreasingGameTransfer>(std::move(inner), fault);
}

}  // namespace hypergame
