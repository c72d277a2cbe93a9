#include "hypergame/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypergame {

Space Space::finite_grid(unsigned resolution) {
  if (resolution == 0) throw std::invalid_argument("finite-grid resolution must be positive");
  return Space(Kind::finite_grid, resolution);
}

bool Space::contains(const Point& p) const {
  if (p.x < 0 || p.x > 1) return false;
  if (kind_ == Kind::unit_interval) return true;
  const Scalar scaled = p.x * resolution_;
  return scaled.get_den() == 1;
}

std::vector<Point> Space::points() const {
  if (kind_ != Kind::finite_grid) throw std::logic_error("the unit interval has no finite point list");
  std::vector<Point> out;
  out.reserve(resolution_ + 1);
  for (unsigned k = 0; k <= resolution_; ++k) out.emplace_back(k, resolution_);
  return out;
}

std::string Space::name() const {
  if (kind_ == Kind::unit_interval) return "unit-interval";
  return "grid:" + std::to_string(resolution_);
}

Scalar distance(const Space&, const Point& x, const Point& y) {
  return x.x < y.x ? Scalar(y.x - x.x) : Scalar(x.x - y.x);
}

Scalar separation(const Space& space, std::span<const Point> pts) {
  std::vector<Point> sorted(pts.begin(), pts.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Scalar best = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    Scalar gap = distance(space, sorted[i - 1], sorted[i]);
    if (gap < best) best = std::move(gap);
  }
  return best;
}

}  // namespace hypergame
