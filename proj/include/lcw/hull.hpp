#pragma once

#include <optional>
#include <vector>

#include "lcw/lp.hpp"
#include "lcw/value.hpp"

namespace lcw {

/// Convex hull membership; returns the convex coefficients over V when
/// the point is inside.
std::optional<Vec> in_hull(const Vec& v, const std::vector<Vec>& V,
                           double eps = 0.0);

/// Indices i with V[i] outside conv(V minus all copies of V[i]).
/// Duplicate points are merged; the first index of each extreme point is
/// reported, in increasing order.
std::vector<int> extreme_subset(const std::vector<Vec>& V, double eps = 0.0);

struct Functional {
  Vec coeffs;
  Value level;  // coeffs . e == level on E and coeffs . u <= level - 1 off E
};

/// Margin-form supporting functional certifying conv(E) as a face of
/// conv(V), or nullopt when none exists. E = V yields the trivial
/// certificate for the improper face.
std::optional<Functional> supporting_functional(const std::vector<Vec>& V,
                                                const std::vector<int>& E,
                                                double eps = 0.0);

bool verify_functional(const std::vector<Vec>& V, const std::vector<int>& E,
                       const Functional& f, double eps = 0.0);

struct FaceVerdict {
  enum Status { Empty, Face, NotFace } status;
  std::vector<int> vertex_set;  // E: vertices of V satisfying the constraints
  std::optional<Functional> functional;  // face certificate
  // Not-face certificate: a point of the constrained region whose hull
  // decomposition puts positive weight on a vertex outside the region.
  Vec violating_point;
  Vec violating_coeffs;
  int violating_vertex = -1;
};

/// Decides whether conv(V) intersected with the constraints is a face of
/// conv(V). Constraints act on the ambient coordinates.
FaceVerdict is_face_region(const std::vector<Vec>& V,
                           const std::vector<LinearConstraint>& C,
                           double eps = 0.0);

/// Necessary condition used as a secondary screen: if the verdict is
/// face, every vertex pair whose midpoint satisfies the constraints has
/// both endpoints in the vertex set.
bool midpoint_screen(const std::vector<Vec>& V,
                     const std::vector<LinearConstraint>& C,
                     const std::vector<int>& E, double eps = 0.0);

}  // namespace lcw
