#include "lcw/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace lcw {

Vec SpanBasis::reduce(const Vec& v, Vec& combo) const {
  Vec r = v;
  combo.assign(rows_.size(), Value(0));
  for (size_t j = 0; j < rows_.size(); ++j) {
    const Row& row = rows_[j];
    if (row.pivot >= r.size()) continue;
    Value f = r[row.pivot];
    if (f.is_zero(eps_)) continue;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= f * row.reduced[i];
    for (size_t i = 0; i < row.combo.size(); ++i)
      combo[i] += f * row.combo[i];
    r[row.pivot] = Value(0);
  }
  return r;
}

int SpanBasis::find_pivot(const Vec& r) const {
  // Largest magnitude entry keeps float reductions stable; for exact
  // values any nonzero entry works equally well.
  int best = -1;
  double best_mag = eps_;
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_zero(eps_)) continue;
    double mag = std::fabs(r[i].to_double());
    if (best < 0 || mag > best_mag) {
      best = int(i);
      best_mag = mag;
    }
  }
  return best;
}

bool SpanBasis::try_add(const Vec& v) {
  Vec combo;
  Vec r = reduce(v, combo);
  int p = find_pivot(r);
  if (p < 0) return false;

  int new_index = int(rows_.size());
  Value inv = Value(1) / r[size_t(p)];
  Row row;
  row.pivot = size_t(p);
  row.reduced.resize(r.size());
  for (size_t i = 0; i < r.size(); ++i) row.reduced[i] = r[i] * inv;
  // r = v - sum(combo_i * basis_i)  =>  normalized row over basis vectors
  row.combo.assign(new_index + 1, Value(0));
  for (int i = 0; i < new_index; ++i) row.combo[i] = -combo[i] * inv;
  row.combo[new_index] = inv;

  // Back-eliminate the new pivot from existing rows (keeps full RREF so
  // coords() is a single pass).
  for (Row& old : rows_) {
    Value f = old.reduced[row.pivot];
    if (f.is_zero(eps_)) continue;
    for (size_t i = 0; i < old.reduced.size(); ++i)
      old.reduced[i] -= f * row.reduced[i];
    old.reduced[row.pivot] = Value(0);
    old.combo.resize(new_index + 1, Value(0));
    for (size_t i = 0; i < row.combo.size(); ++i)
      old.combo[i] -= f * row.combo[i];
  }
  for (Row& old : rows_) old.combo.resize(new_index + 1, Value(0));
  rows_.push_back(std::move(row));
  return true;
}

std::optional<Vec> SpanBasis::coords(const Vec& v) const {
  Vec combo;
  Vec r = reduce(v, combo);
  for (auto& x : r)
    if (!x.is_zero(eps_)) return std::nullopt;
  combo.resize(rows_.size(), Value(0));
  return combo;
}

}  // namespace lcw
