#pragma once

#include "polyapprox/vector.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace polyapprox {

/// Positive combination p = sum alpha_i p_i over a neighborhood of pairwise
/// close grid directions, plus the normalized point p_hat = p / sum alpha_i.
struct Decomposition {
  std::vector<int> indices;
  std::vector<double> alphas;
  double alpha_sum = 0.0;
  Vector p_hat;
};

/// Finite set of unit directions in R^2 (angular order) or R^3 (triangulated
/// sphere). Immutable; copies share storage.
///
/// The reported step is the least double strictly above every chord inside a
/// decomposition neighborhood (adjacent pairs in 2-D, face edges in 3-D), so
/// |p_i - p_j| < step holds for every pair a decomposition can use.
class Grid {
 public:
  enum class Structure { Angular, Triangulated };

  int dim() const { return data_->dim; }
  std::size_t size() const { return data_->dirs.size(); }
  const std::vector<Vector>& dirs() const { return data_->dirs; }
  const Vector& dir(std::size_t i) const { return data_->dirs[i]; }
  double step() const { return data_->step; }
  Structure structure() const { return data_->structure; }

  /// Angles in [0, 2pi), increasing (2-D only).
  const std::vector<double>& angles() const { return data_->angles; }
  /// Outward-oriented triangles (3-D only).
  const std::vector<std::array<int, 3>>& faces() const { return data_->faces; }

  /// Index of the grid direction within 1e-12 of p/|p|, if any.
  std::optional<int> find_direction(const Vector& p) const;

  /// Throws ZeroDirection for p = 0.
  Decomposition decompose(const Vector& p) const;

  /// Neighborhoods a decomposition may draw from.
  std::vector<std::vector<int>> neighborhoods() const;

  /// Copy of this grid reporting a different step. Used for fault injection
  /// in the verification harness; the directions are untouched.
  Grid with_reported_step(double step) const;

  friend Grid grid_uniform_2d(int n);
  friend Grid grid_from_angles(std::vector<double> angles);
  friend Grid grid_icosphere_3d(int freq);

 private:
  struct Data {
    int dim = 2;
    std::vector<Vector> dirs;
    double step = 0.0;
    Structure structure = Structure::Angular;
    std::vector<double> angles;
    std::vector<std::array<int, 3>> faces;
  };
  explicit Grid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  Decomposition decompose_2d(const Vector& p, double norm) const;
  Decomposition decompose_3d(const Vector& p, double norm) const;

  std::shared_ptr<const Data> data_;
};

/// N equally spaced directions at angles 2 pi k / N. Requires N >= 13.
Grid grid_uniform_2d(int n);

/// Directions at the given strictly increasing angles in [0, 2 pi).
Grid grid_from_angles(std::vector<double> angles);

/// Class-I geodesic subdivision of the icosahedron with the given frequency,
/// projected to the unit sphere. Requires freq >= 3.
Grid grid_icosphere_3d(int freq);

/// Text export: header `dim N step`, then one direction per line with 17
/// significant digits.
std::string export_grid(const Grid& grid);

}  // namespace polyapprox
