#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>

namespace polyapprox {

// Dimension-generic vector with inline storage. Grid pipelines use n = 2, 3;
// the inscribed-ball LP appends one coordinate, hence the capacity of 4.
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

inline Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

inline Vector zero_vector(int dim) { return Vector::Zero(dim); }

inline int dim_of(const Vector& v) { return static_cast<int>(v.size()); }

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace polyapprox
