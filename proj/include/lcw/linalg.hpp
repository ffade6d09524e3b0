#pragma once

#include <optional>
#include <vector>

#include "lcw/value.hpp"

namespace lcw {

/// Incremental row space with coordinate tracking: vectors added with
/// try_add become the basis; coords() expresses any vector of the span
/// as coefficients over exactly those vectors. Gaussian elimination,
/// exact in rational mode and eps-tolerant otherwise.
class SpanBasis {
 public:
  explicit SpanBasis(double eps = 0.0) : eps_(eps) {}

  /// Returns true (and records v as basis vector #dim) iff v is linearly
  /// independent of the vectors added so far.
  bool try_add(const Vec& v);

  /// Coefficients over the recorded basis, or nullopt if v is outside
  /// the span.
  std::optional<Vec> coords(const Vec& v) const;

  bool in_span(const Vec& v) const { return coords(v).has_value(); }
  int dim() const { return int(rows_.size()); }

 private:
  struct Row {
    Vec reduced;  // normalized: reduced[pivot] == 1
    Vec combo;    // reduced as a combination of the recorded basis vectors
    size_t pivot;
  };

  // Reduces v against the rows; combo receives the basis coefficients of
  // the eliminated part.
  Vec reduce(const Vec& v, Vec& combo) const;
  int find_pivot(const Vec& r) const;

  double eps_;
  std::vector<Row> rows_;
};

}  // namespace lcw
