#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "strat/util/error.hpp"

namespace strat {

/// Axis-aligned box given by opposite corners.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  void check() const {
    if (lo.size() != hi.size() || lo.size() == 0)
      throw DomainError("invalid-spec", "box corners must share a nonzero dimension");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i])) throw DomainError("invalid-spec", "degenerate box");
  }

  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const {
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
    return true;
  }
};

/// Compact primitive shapes with exact Euclidean distance functions. The
/// rug function of a shape is the squared distance; dist exposes d itself.
class Shape {
public:
  enum class Kind { Box, Segment, Disk, Circle, Point, Union };

  Kind kind;
  // Box
  Box box;
  // Segment
  Eigen::VectorXd seg_a, seg_b;
  // Disk (solid ball) / Circle (boundary curve, 2D only)
  Eigen::VectorXd center;
  double radius = 0.0;
  // Point
  Eigen::VectorXd point;
  // Union
  std::vector<Shape> members;

  static Shape make_box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
    Shape s;
    s.kind = Kind::Box;
    s.box = {std::move(lo), std::move(hi)};
    s.box.check();
    return s;
  }
  static Shape make_segment(Eigen::VectorXd a, Eigen::VectorXd b) {
    if (a.size() != b.size() || a.size() == 0)
      throw DomainError("invalid-spec", "segment endpoints must share a dimension");
    Shape s;
    s.kind = Kind::Segment;
    s.seg_a = std::move(a);
    s.seg_b = std::move(b);
    return s;
  }
  static Shape make_disk(Eigen::VectorXd center, double r) {
    if (!(r > 0)) throw DomainError("invalid-spec", "disk radius must be positive");
    Shape s;
    s.kind = Kind::Disk;
    s.center = std::move(center);
    s.radius = r;
    return s;
  }
  static Shape make_circle(Eigen::VectorXd center, double r) {
    if (!(r > 0)) throw DomainError("invalid-spec", "circle radius must be positive");
    if (center.size() != 2) throw DomainError("invalid-spec", "circles live in the plane");
    Shape s;
    s.kind = Kind::Circle;
    s.center = std::move(center);
    s.radius = r;
    return s;
  }
  static Shape make_point(Eigen::VectorXd p) {
    if (p.size() == 0) throw DomainError("invalid-spec", "empty point");
    Shape s;
    s.kind = Kind::Point;
    s.point = std::move(p);
    return s;
  }
  static Shape make_union(std::vector<Shape> members) {
    if (members.empty()) throw DomainError("invalid-spec", "union needs at least one member");
    const Eigen::Index d = members.front().dim();
    for (const auto& m : members)
      if (m.dim() != d) throw DomainError("invalid-spec", "union members must share a dimension");
    Shape s;
    s.kind = Kind::Union;
    s.members = std::move(members);
    return s;
  }

  Eigen::Index dim() const {
    switch (kind) {
      case Kind::Box: return box.lo.size();
      case Kind::Segment: return seg_a.size();
      case Kind::Disk:
      case Kind::Circle: return center.size();
      case Kind::Point: return point.size();
      case Kind::Union: return members.front().dim();
    }
    return 0;
  }

  /// Euclidean distance to the closure of the shape; zero exactly on it.
  double dist(const Eigen::VectorXd& x) const {
    if (x.size() != dim())
      throw DomainError("dimension-mismatch", "point has dimension " + std::to_string(x.size()) +
                                                  ", shape has " + std::to_string(dim()));
    switch (kind) {
      case Kind::Point: return (x - point).norm();
      case Kind::Box: {
        double sq = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          const double d = std::max({box.lo[i] - x[i], 0.0, x[i] - box.hi[i]});
          sq += d * d;
        }
        return std::sqrt(sq);
      }
      case Kind::Segment: {
        const Eigen::VectorXd ab = seg_b - seg_a;
        const double len2 = ab.squaredNorm();
        const double w = len2 > 0 ? std::clamp((x - seg_a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        return (x - (seg_a + w * ab)).norm();
      }
      case Kind::Disk: return std::max((x - center).norm() - radius, 0.0);
      case Kind::Circle: return std::abs((x - center).norm() - radius);
      case Kind::Union: {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : members) best = std::min(best, m.dist(x));
        return best;
      }
    }
    throw DomainError("invalid-spec", "unknown shape kind");
  }

  /// First critical value of the squared-distance rug function, from the
  /// analytic table: a circle of radius r has reach r (the origin is the
  /// critical point); convex shapes have infinite reach.
  double reach() const {
    switch (kind) {
      case Kind::Circle: return radius;
      case Kind::Point:
      case Kind::Segment:
      case Kind::Box:
      case Kind::Disk: return std::numeric_limits<double>::infinity();
      case Kind::Union:
        throw DomainError("unsupported-shape", "reach of a union is not analytic here");
    }
    throw DomainError("invalid-spec", "unknown shape kind");
  }

  /// Uniform-ish point on (or in) the shape; unions pick a member uniformly.
  template <typename RngT>
  Eigen::VectorXd sample(RngT& rng) const {
    switch (kind) {
      case Kind::Point: return point;
      case Kind::Segment: {
        const double w = rng.uniform();
        return seg_a + w * (seg_b - seg_a);
      }
      case Kind::Box: {
        Eigen::VectorXd x(box.lo.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
        return x;
      }
      case Kind::Circle: {
        const double a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        Eigen::VectorXd x(2);
        x[0] = center[0] + radius * std::cos(a);
        x[1] = center[1] + radius * std::sin(a);
        return x;
      }
      case Kind::Disk: {
        // rejection inside the bounding cube
        Eigen::VectorXd x(center.size());
        for (;;) {
          for (Eigen::Index i = 0; i < x.size(); ++i)
            x[i] = center[i] + rng.uniform(-radius, radius);
          if ((x - center).norm() <= radius) return x;
        }
      }
      case Kind::Union: return members[rng.uniform_index(members.size())].sample(rng);
    }
    throw DomainError("invalid-spec", "unknown shape kind");
  }

  /// Tight axis-aligned bounding box.
  Box bounding_box() const {
    switch (kind) {
      case Kind::Point: return {point, point};
      case Kind::Box: return box;
      case Kind::Segment: return {seg_a.cwiseMin(seg_b), seg_a.cwiseMax(seg_b)};
      case Kind::Disk:
      case Kind::Circle: {
        Eigen::VectorXd r = Eigen::VectorXd::Constant(center.size(), radius);
        return {center - r, center + r};
      }
      case Kind::Union: {
        Box b = members.front().bounding_box();
        for (const auto& m : members) {
          const Box mb = m.bounding_box();
          b.lo = b.lo.cwiseMin(mb.lo);
          b.hi = b.hi.cwiseMax(mb.hi);
        }
        return b;
      }
    }
    throw DomainError("invalid-spec", "unknown shape kind");
  }
};

namespace geom_detail {

inline Eigen::VectorXd vec_from_json(const nlohmann::json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

inline nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

} // namespace geom_detail

// shape files: {"kind": ..., params...}
inline void to_json(nlohmann::json& j, const Shape& s) {
  using geom_detail::vec_to_json;
  switch (s.kind) {
    case Shape::Kind::Box:
      j = {{"kind", "box"}, {"lo", vec_to_json(s.box.lo)}, {"hi", vec_to_json(s.box.hi)}};
      return;
    case Shape::Kind::Segment:
      j = {{"kind", "segment"}, {"a", vec_to_json(s.seg_a)}, {"b", vec_to_json(s.seg_b)}};
      return;
    case Shape::Kind::Disk:
      j = {{"kind", "disk"}, {"center", vec_to_json(s.center)}, {"radius", s.radius}};
      return;
    case Shape::Kind::Circle:
      j = {{"kind", "circle"}, {"center", vec_to_json(s.center)}, {"radius", s.radius}};
      return;
    case Shape::Kind::Point:
      j = {{"kind", "point"}, {"at", vec_to_json(s.point)}};
      return;
    case Shape::Kind::Union: {
      j = {{"kind", "union"}, {"members", nlohmann::json::array()}};
      for (const auto& m : s.members) j["members"].push_back(m);
      return;
    }
  }
}

inline void from_json(const nlohmann::json& j, Shape& s) {
  using geom_detail::vec_from_json;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box") s = Shape::make_box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
  else if (kind == "segment")
    s = Shape::make_segment(vec_from_json(j.at("a")), vec_from_json(j.at("b")));
  else if (kind == "disk")
    s = Shape::make_disk(vec_from_json(j.at("center")), j.at("radius").get<double>());
  else if (kind == "circle")
    s = Shape::make_circle(vec_from_json(j.at("center")), j.at("radius").get<double>());
  else if (kind == "point") s = Shape::make_point(vec_from_json(j.at("at")));
  else if (kind == "union") {
    std::vector<Shape> members;
    for (const auto& m : j.at("members")) members.push_back(m.get<Shape>());
    s = Shape::make_union(std::move(members));
  } else {
    throw DomainError("invalid-spec", "unknown shape kind '" + kind + "'");
  }
}

} // namespace strat
