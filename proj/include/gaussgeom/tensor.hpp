#pragma once

#include <functional>
#include <vector>

#include "gaussgeom/symcone.hpp"

namespace gaussgeom {

/// Dense components T_{a1...ak} of a (0,k)-tensor in the vech basis, stored
/// row-major over d^k entries. Index 0 is the slowest-varying.
class ComponentArray {
 public:
  ComponentArray() = default;
  ComponentArray(int valence, int dim);

  int valence() const { return valence_; }
  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }
  double& at(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  double at(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
  std::size_t offset(std::initializer_list<int> idx) const;
  std::size_t offset(const std::vector<int>& idx) const;
  std::vector<int> unflatten(std::size_t flat) const;

  const std::vector<double>& data() const { return data_; }
  double max_abs() const;

  /// T(v1, ..., vk): contraction against the vech coordinates of each argument.
  double contract(const std::vector<const Vector*>& args) const;

  /// Largest |T_idx - T_perm(idx)| over all index permutations.
  double max_asymmetry() const;

 private:
  int valence_ = 0;
  int dim_ = 0;
  std::vector<double> data_;
};

ComponentArray operator-(const ComponentArray& a, const ComponentArray& b);

/// A smooth (0,k)-tensor field on the cone, evaluated into vech-basis components.
struct TensorField {
  int valence = 0;
  int n = 0;
  std::function<ComponentArray(const SpdPoint&)> eval;
  // Metric fields only: closed-form Christoffel symbols Gamma^c_{ab} stored at [c][a][b].
  std::function<ComponentArray(const SpdPoint&)> christoffel;
};

/// Calls f(idx) once for every non-decreasing multi-index of the given valence.
void for_each_sorted_index(int valence, int dim, const std::function<void(const std::vector<int>&)>& f);

/// Copies the value at each sorted multi-index to all of its permutations.
void fill_symmetric(ComponentArray& t);

}  // namespace gaussgeom
