#pragma once

#include <vector>

#include "lcw/fragment.hpp"
#include "lcw/hull.hpp"

namespace lcw {

struct TypeVector {
  Vec coords;  // basis values at a realizer; coordinate 0 is the constant 1
  std::vector<std::vector<int>> realizers;
};

/// Deduplicated realized type vectors of one context; class_of maps every
/// flat tuple index to its vector.
struct TypeSpace {
  const Fragment* frag = nullptr;
  int n = 0;
  std::vector<TypeVector> vectors;
  std::vector<int> class_of;
};

/// Basis values at one tuple.
Vec tp(const Fragment& F, const std::vector<int>& tuple);

TypeSpace realized_types(const Fragment& F, int n);

/// Index of the vector realized by the tuple.
int type_of(const TypeSpace& TS, const std::vector<int>& tuple);

/// Indices of the extreme vectors, increasing.
std::vector<int> extreme_types(const TypeSpace& TS);

struct CompiledPartialType {
  std::vector<Condition> conditions;
  std::vector<LinearConstraint> constraints;  // on type coordinates
};

/// Compiles conditions into linear constraints on type coordinates. Free
/// variables are mapped to x1..xn in order of first appearance; a side
/// outside the fragment span is rejected with std::invalid_argument.
CompiledPartialType compile_partial_type(const TypeSpace& TS,
                                         const std::vector<Condition>& conds);

FaceVerdict is_face_partial_type(const TypeSpace& TS,
                                 const CompiledPartialType& pt);

/// Minimum tuple metric over realizer pairs of the two vectors.
Value type_metric(const TypeSpace& TS, int p, int q);

struct SigmaFaceResult {
  Value r;  // type metric between the input vectors
  std::vector<LinearConstraint> constraints;
  TypeSpace doubled;  // the 2n-type space the verdict lives in
  FaceVerdict verdict;
  bool marginals_ok = false;  // face vertices have marginals p and q
};

/// The pinned-pair region: p on the first n variables, q on the last n,
/// and the weighted variable distance at most type_metric(p, q).
SigmaFaceResult sigma_face(const Fragment& F, const TypeSpace& TS, int p,
                           int q);

/// Coordinate projection of a context n_from vector onto the context
/// n_from - 1 basis prefix.
Vec restrict_type(const Fragment& F, int n_from, const Vec& v);

/// Type of a over the parameters b: the context |a|+|b| vector of the
/// concatenated tuple.
Vec tp_over(const Fragment& F, const std::vector<int>& a,
            const std::vector<int>& b);

/// Whether tp_over(a, b) is extreme among {tp_over(c, b) : c}.
bool is_extreme_over(const Fragment& F, const std::vector<int>& a,
                     const std::vector<int>& b);

}  // namespace lcw
