#include "tarski/lattice.hpp"

#include <limits>
#include <sstream>

namespace tarski {

GridPoint make_point(std::initializer_list<Coord> coords) {
  return make_point(std::vector<Coord>(coords));
}

GridPoint make_point(const std::vector<Coord>& coords) {
  GridPoint p(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<Eigen::Index>(i)] = coords[i];
  return p;
}

std::vector<Coord> to_vector(const GridPoint& p) { return {p.data(), p.data() + p.size()}; }

std::string to_string(const GridPoint& p) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out << ',';
    out << p[i];
  }
  out << ')';
  return out.str();
}

namespace {

void require_same_shape(const GridPoint& x, const GridPoint& y) {
  if (x.size() != y.size()) {
    throw ShapeError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()));
  }
}

}  // namespace

bool leq(const GridPoint& x, const GridPoint& y) {
  require_same_shape(x, y);
  return (x.array() <= y.array()).all();
}

std::pair<GridPoint, GridPoint> join_meet(const GridPoint& x, const GridPoint& y) {
  require_same_shape(x, y);
  return {x.cwiseMax(y), x.cwiseMin(y)};
}

GridPoint join(const GridPoint& x, const GridPoint& y) {
  require_same_shape(x, y);
  return x.cwiseMax(y);
}

GridPoint meet(const GridPoint& x, const GridPoint& y) {
  require_same_shape(x, y);
  return x.cwiseMin(y);
}

GridBox::GridBox(GridPoint low, GridPoint high) : low_(std::move(low)), high_(std::move(high)) {
  require_same_shape(low_, high_);
  if (low_.size() == 0) throw ShapeError("box must have at least one dimension");
  if (!leq(low_, high_)) {
    throw DomainError("box corners out of order: " + to_string(low_) + " > " + to_string(high_));
  }
}

GridBox GridBox::from_sides(const std::vector<Coord>& sides) {
  if (sides.empty()) throw ShapeError("box must have at least one dimension");
  for (Coord s : sides) {
    if (s < 1) throw DomainError("side length must be positive");
  }
  GridPoint low = GridPoint::Ones(static_cast<Eigen::Index>(sides.size()));
  return GridBox(low, make_point(sides));
}

GridBox GridBox::cube(Coord n, int d) {
  if (d < 1) throw ShapeError("box must have at least one dimension");
  return from_sides(std::vector<Coord>(static_cast<std::size_t>(d), n));
}

bool GridBox::contains(const GridPoint& x) const {
  if (x.size() != low_.size()) return false;
  return (low_.array() <= x.array()).all() && (x.array() <= high_.array()).all();
}

bool GridBox::contains(const GridBox& other) const {
  return contains(other.low_) && contains(other.high_);
}

std::uint64_t GridBox::point_count() const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (int i = 0; i < dims(); ++i) {
    auto s = static_cast<std::uint64_t>(side(i));
    if (count > kMax / s) return kMax;
    count *= s;
  }
  return count;
}

GridPoint GridBox::clamp(const GridPoint& x) const {
  require_same_shape(x, low_);
  return x.cwiseMax(low_).cwiseMin(high_);
}

std::uint64_t GridBox::index_of(const GridPoint& x) const {
  if (!contains(x)) throw DomainError("point " + to_string(x) + " outside " + tarski::to_string(*this));
  std::uint64_t idx = 0;
  for (int i = 0; i < dims(); ++i) {
    idx = idx * static_cast<std::uint64_t>(side(i)) + static_cast<std::uint64_t>(x[i] - low_[i]);
  }
  return idx;
}

GridPoint GridBox::point_at(std::uint64_t index) const {
  if (index >= point_count()) throw DomainError("index out of range");
  GridPoint x(dims());
  for (int i = dims() - 1; i >= 0; --i) {
    auto s = static_cast<std::uint64_t>(side(i));
    x[i] = low_[i] + static_cast<Coord>(index % s);
    index /= s;
  }
  return x;
}

std::string to_string(const GridBox& b) {
  return "[" + to_string(b.low()) + ".." + to_string(b.high()) + "]";
}

}  // namespace tarski
