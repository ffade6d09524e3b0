#pragma once

#include <memory>
#include <vector>

#include "lcw/structure.hpp"

namespace lcw {

/// A finitely additive probability charge on a finite index set,
/// i.e. a weight vector. Point masses are the 0-1 ultracharges.
struct Charge {
  Vec weights;

  explicit Charge(Vec w);
  static Charge point_mass(int m, int j);
  static Charge uniform(int m);
  int size() const { return int(weights.size()); }
};

/// Weighted sum of values against the charge.
Value integrate(const Charge& mu, const Vec& values);

struct UltrameanResult {
  FiniteStructure quotient;
  std::vector<std::vector<int>> reps;  // class -> canonical factor tuple
  std::vector<int> class_of;           // product-tuple flat index -> class
  std::vector<int> factor_sizes;

  size_t product_index(const std::vector<int>& tuple) const;
  int class_of_tuple(const std::vector<int>& tuple) const;
};

/// Quotient of the product by the zero sets of the integrated pseudo-metric;
/// constants and functions act componentwise, relations integrate.
UltrameanResult build_ultramean(
    const std::vector<const FiniteStructure*>& factors, const Charge& mu);

struct LosCheck {
  Value lhs;  // evaluation on the ultramean at the classes
  Value rhs;  // integral of the per-factor evaluations at representatives
  bool equal;
};

/// Evaluates both sides of the averaging identity for phi at the given
/// classes (one per free variable, in first-occurrence order).
LosCheck check_los(const Formula& phi,
                   const std::vector<const FiniteStructure*>& factors,
                   const Charge& mu, const UltrameanResult& um,
                   const std::vector<int>& classes);

}  // namespace lcw
