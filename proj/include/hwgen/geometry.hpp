#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hwgen {

// Glyph-local units: 1.0 is the nominal lowercase x-height, y grows downward.
template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2d = Point2<double>;
using Vector2d = Vector2<double>;

struct NodeFlags {
  bool direction_change = false;
  bool interrupt_after = false;
  bool cutoff_if_medial = false;

  bool operator==(const NodeFlags&) const = default;
};

/// A template anchor: point P and its handle vector V.
///
/// The outgoing handle is P + V. The incoming handle is P - V, or P + V when
/// the node carries the direction-change flag, which makes the pen reverse.
template <typename Scalar>
struct BasicControlNode {
  Point2<Scalar> p = Point2<Scalar>::Zero();
  Vector2<Scalar> v = Vector2<Scalar>::Zero();
  NodeFlags flags;

  Point2<Scalar> out_handle() const { return p + v; }
  Point2<Scalar> in_handle() const {
    return flags.direction_change ? Point2<Scalar>(p + v) : Point2<Scalar>(p - v);
  }

  bool operator==(const BasicControlNode& o) const {
    return p == o.p && v == o.v && flags == o.flags;
  }
};

using ControlNode = BasicControlNode<double>;

template <typename Scalar>
struct CurveSegment {
  Point2<Scalar> p1, p2, p3, p4;

  bool operator==(const CurveSegment& o) const {
    return p1 == o.p1 && p2 == o.p2 && p3 == o.p3 && p4 == o.p4;
  }
};

template <typename Scalar>
struct Polyline {
  std::vector<Point2<Scalar>> points;
  bool pen_down = true;
};

using CurveSegmentd = CurveSegment<double>;
using Polylined = Polyline<double>;

template <typename Scalar>
bool is_finite(const Point2<Scalar>& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y());
}

/// Bernstein-form cubic: (1-t)^3 P1 + 3(1-t)^2 t P2 + 3(1-t) t^2 P3 + t^3 P4.
template <typename Scalar>
Point2<Scalar> eval_cubic(const CurveSegment<Scalar>& seg, Scalar t) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) {
    throw std::domain_error("eval_cubic: t outside [0, 1]");
  }
  const Scalar s = Scalar(1) - t;
  const Scalar b0 = s * s * s;
  const Scalar b1 = Scalar(3) * s * s * t;
  const Scalar b2 = Scalar(3) * s * t * t;
  const Scalar b3 = t * t * t;
  return b0 * seg.p1 + b1 * seg.p2 + b2 * seg.p3 + b3 * seg.p4;
}

/// First derivative of the cubic at t (no domain check; used for tangents).
template <typename Scalar>
Vector2<Scalar> derivative_cubic(const CurveSegment<Scalar>& seg, Scalar t) {
  const Scalar s = Scalar(1) - t;
  return Scalar(3) * s * s * (seg.p2 - seg.p1) + Scalar(6) * s * t * (seg.p3 - seg.p2) +
         Scalar(3) * t * t * (seg.p4 - seg.p3);
}

/// Builds one segment per consecutive node pair. Emission stops after the
/// first node flagged interrupt_after; later nodes in the list are ignored.
template <typename Scalar>
std::vector<CurveSegment<Scalar>> segments_from_nodes(
    const std::vector<BasicControlNode<Scalar>>& nodes) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("segments_from_nodes: need at least 2 nodes");
  }
  std::vector<CurveSegment<Scalar>> out;
  out.reserve(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& a = nodes[i];
    if (a.flags.interrupt_after) break;
    const auto& b = nodes[i + 1];
    out.push_back({a.p, a.out_handle(), b.in_handle(), b.p});
  }
  return out;
}

namespace detail {

template <typename Scalar>
Scalar distance_to_segment(const Point2<Scalar>& q, const Point2<Scalar>& a,
                           const Point2<Scalar>& b) {
  const Vector2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 == Scalar(0)) return (q - a).norm();
  const Scalar t = std::clamp((q - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return (q - (a + t * ab)).norm();
}

template <typename Scalar>
void subdivide(const CurveSegment<Scalar>& seg, Scalar tolerance, int depth,
               std::vector<Point2<Scalar>>& out) {
  // The curve lies in the convex hull of its controls, so bounding the
  // control distance to the chord bounds the curve's deviation from it.
  const Scalar d = std::max(distance_to_segment<Scalar>(seg.p2, seg.p1, seg.p4),
                            distance_to_segment<Scalar>(seg.p3, seg.p1, seg.p4));
  if (d <= tolerance || depth >= 32) {
    out.push_back(seg.p4);
    return;
  }
  const Scalar half(0.5);
  const Point2<Scalar> p12 = half * (seg.p1 + seg.p2);
  const Point2<Scalar> p23 = half * (seg.p2 + seg.p3);
  const Point2<Scalar> p34 = half * (seg.p3 + seg.p4);
  const Point2<Scalar> p123 = half * (p12 + p23);
  const Point2<Scalar> p234 = half * (p23 + p34);
  const Point2<Scalar> mid = half * (p123 + p234);
  subdivide<Scalar>({seg.p1, p12, p123, mid}, tolerance, depth + 1, out);
  subdivide<Scalar>({mid, p234, p34, seg.p4}, tolerance, depth + 1, out);
}

}  // namespace detail

/// Adaptive flattening by recursive midpoint subdivision. Every chord stays
/// within `tolerance` of the curve piece it replaces; endpoints are exact.
template <typename Scalar>
Polyline<Scalar> flatten(const CurveSegment<Scalar>& seg, Scalar tolerance) {
  if (!(tolerance > Scalar(0))) {
    throw std::domain_error("flatten: tolerance must be positive");
  }
  Polyline<Scalar> line;
  line.points.push_back(seg.p1);
  detail::subdivide(seg, tolerance, 0, line.points);
  return line;
}

/// Flattens a node chain into one pen-down polyline with consecutive
/// duplicate points removed. May return fewer than 2 points for a chain
/// that collapses to a dot.
template <typename Scalar>
Polyline<Scalar> flatten_nodes(const std::vector<BasicControlNode<Scalar>>& nodes,
                               Scalar tolerance) {
  Polyline<Scalar> line;
  for (const auto& seg : segments_from_nodes(nodes)) {
    const auto piece = flatten(seg, tolerance);
    for (const auto& q : piece.points) {
      if (line.points.empty() || line.points.back() != q) line.points.push_back(q);
    }
  }
  return line;
}

}  // namespace hwgen
