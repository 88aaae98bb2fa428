#include "gaussgeom/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaussgeom {

ComponentArray::ComponentArray(int valence, int dim) : valence_(valence), dim_(dim) {
  if (valence < 1 || dim < 1) throw ShapeError("component array needs valence >= 1 and dim >= 1");
  std::size_t total = 1;
  for (int k = 0; k < valence; ++k) total *= static_cast<std::size_t>(dim);
  data_.assign(total, 0.0);
}

std::size_t ComponentArray::offset(std::initializer_list<int> idx) const {
  return offset(std::vector<int>(idx));
}

std::size_t ComponentArray::offset(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != valence_)
    throw ShapeError("expected " + std::to_string(valence_) + " indices");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw ShapeError("component index out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> ComponentArray::unflatten(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(valence_));
  for (int k = valence_ - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

double ComponentArray::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComponentArray::contract(const std::vector<const Vector*>& args) const {
  if (static_cast<int>(args.size()) != valence_) throw ShapeError("contraction arity mismatch");
  for (const Vector* v : args)
    if (v->size() != dim_) throw ShapeError("contraction argument has wrong dimension");
  // Contract the last slot first; the running array shrinks by a factor d each pass.
  std::vector<double> cur = data_;
  for (int k = valence_ - 1; k >= 0; --k) {
    const Vector& v = *args[static_cast<std::size_t>(k)];
    std::vector<double> next(cur.size() / static_cast<std::size_t>(dim_), 0.0);
    for (std::size_t outer = 0; outer < next.size(); ++outer) {
      double s = 0.0;
      for (int a = 0; a < dim_; ++a) s += cur[outer * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)] * v[a];
      next[outer] = s;
    }
    cur = std::move(next);
  }
  return cur[0];
}

double ComponentArray::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    std::vector<int> idx = unflatten(flat);
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    worst = std::max(worst, std::abs(data_[flat] - data_[offset(sorted)]));
  }
  return worst;
}

ComponentArray operator-(const ComponentArray& a, const ComponentArray& b) {
  if (a.valence() != b.valence() || a.dim() != b.dim()) throw ShapeError("component array shape mismatch");
  ComponentArray out(a.valence(), a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void for_each_sorted_index(int valence, int dim, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(static_cast<std::size_t>(valence), 0);
  for (;;) {
    f(idx);
    int k = valence - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == dim - 1) --k;
    if (k < 0) return;
    const int next = idx[static_cast<std::size_t>(k)] + 1;
    for (int j = k; j < valence; ++j) idx[static_cast<std::size_t>(j)] = next;
  }
}

void fill_symmetric(ComponentArray& t) {
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::vector<int> sorted = t.unflatten(flat);
    std::sort(sorted.begin(), sorted.end());
    t[flat] = t[t.offset(sorted)];
  }
}

}  // namespace gaussgeom
