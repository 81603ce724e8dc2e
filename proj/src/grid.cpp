#include "polyapprox/grid.hpp"

#include "polyapprox/error.hpp"
#include "polyapprox/format.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <tuple>

namespace polyapprox {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOnGridTol = 1e-12;

double strict_step(double max_chord) {
  return std::nextafter(max_chord, std::numeric_limits<double>::infinity());
}

void require_step(double step) {
  if (!(step < 0.5)) {
    throw Error(ErrorCode::StepTooLarge,
                "grid step " + format_g(step, 6) + " is not below 1/2");
  }
}

double det3(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

Grid grid_uniform_2d(int n) {
  if (n < 3) throw Error(ErrorCode::StepTooLarge, "a planar grid needs at least 3 directions");
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) angles[static_cast<std::size_t>(k)] = kTwoPi * k / n;
  auto data = std::make_shared<Grid::Data>();
  data->dim = 2;
  data->structure = Grid::Structure::Angular;
  double max_chord = 0.0;
  for (int k = 0; k < n; ++k) {
    data->dirs.push_back(make_vector({std::cos(angles[static_cast<std::size_t>(k)]),
                                      std::sin(angles[static_cast<std::size_t>(k)])}));
  }
  for (int k = 0; k < n; ++k) {
    max_chord = std::max(max_chord, (data->dirs[static_cast<std::size_t>((k + 1) % n)] -
                                     data->dirs[static_cast<std::size_t>(k)])
                                        .norm());
  }
  data->angles = std::move(angles);
  data->step = strict_step(max_chord);
  require_step(data->step);
  return Grid(std::move(data));
}

Grid grid_from_angles(std::vector<double> angles) {
  const std::size_t n = angles.size();
  if (n < 3) {
    throw Error(ErrorCode::StepTooLarge, "a planar grid needs at least 3 directions");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(angles[k]) || angles[k] < 0.0 || angles[k] >= kTwoPi) {
      throw Error(ErrorCode::InvalidGeometry, "grid angles must lie in [0, 2pi)");
    }
    if (k > 0 && angles[k] <= angles[k - 1]) {
      throw Error(angles[k] == angles[k - 1] ? ErrorCode::DuplicateDirection
                                             : ErrorCode::InvalidGeometry,
                  "grid angles must be strictly increasing");
    }
  }
  auto data = std::make_shared<Grid::Data>();
  data->dim = 2;
  data->structure = Grid::Structure::Angular;
  for (double a : angles) data->dirs.push_back(make_vector({std::cos(a), std::sin(a)}));
  double max_chord = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    double gap = angles[next] - angles[k];
    if (next == 0) gap += kTwoPi;
    const double chord = (data->dirs[next] - data->dirs[k]).norm();
    if (chord <= kOnGridTol) throw Error(ErrorCode::DuplicateDirection, "coincident directions");
    // A gap of half a turn or more cannot be spanned by positive combinations.
    max_chord = std::max(max_chord, gap >= std::numbers::pi ? 2.0 : chord);
  }
  data->angles = std::move(angles);
  data->step = strict_step(max_chord);
  require_step(data->step);
  return Grid(std::move(data));
}

Grid grid_icosphere_3d(int freq) {
  if (freq < 1) throw Error(ErrorCode::StepTooLarge, "frequency must be positive");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vector> ico;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-phi, phi}) {
      ico.push_back(make_vector({0.0, a, b}));
      ico.push_back(make_vector({a, b, 0.0}));
      ico.push_back(make_vector({b, 0.0, a}));
    }
  }
  for (auto& v : ico) v.normalize();
  double edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ico.size(); ++i) {
    for (std::size_t j = i + 1; j < ico.size(); ++j) edge = std::min(edge, (ico[i] - ico[j]).norm());
  }
  std::vector<std::array<int, 3>> big;
  auto adjacent = [&](std::size_t i, std::size_t j) {
    return (ico[i] - ico[j]).norm() < edge * (1.0 + 1e-9);
  };
  for (std::size_t i = 0; i < ico.size(); ++i) {
    for (std::size_t j = i + 1; j < ico.size(); ++j) {
      for (std::size_t k = j + 1; k < ico.size(); ++k) {
        if (!adjacent(i, j) || !adjacent(j, k) || !adjacent(i, k)) continue;
        std::array<int, 3> f{static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
        if (det3(ico[i], ico[j], ico[k]) < 0.0) std::swap(f[1], f[2]);
        big.push_back(f);
      }
    }
  }

  auto data = std::make_shared<Grid::Data>();
  data->dim = 3;
  data->structure = Grid::Structure::Triangulated;
  std::map<std::tuple<long long, long long, long long>, int> index_of;
  auto vertex_id = [&](Vector v) {
    v.normalize();
    const auto key = std::make_tuple(std::llround(v[0] * 1e9), std::llround(v[1] * 1e9),
                                     std::llround(v[2] * 1e9));
    auto it = index_of.find(key);
    if (it != index_of.end()) return it->second;
    const int id = static_cast<int>(data->dirs.size());
    data->dirs.push_back(v);
    index_of.emplace(key, id);
    return id;
  };
  for (const auto& f : big) {
    const Vector& a = ico[static_cast<std::size_t>(f[0])];
    const Vector& b = ico[static_cast<std::size_t>(f[1])];
    const Vector& c = ico[static_cast<std::size_t>(f[2])];
    // Lattice point (i, j): a + i/f (b - a) + j/f (c - a).
    std::vector<std::vector<int>> ids(static_cast<std::size_t>(freq) + 1);
    for (int i = 0; i <= freq; ++i) {
      for (int j = 0; i + j <= freq; ++j) {
        const double u = static_cast<double>(i) / freq;
        const double w = static_cast<double>(j) / freq;
        ids[static_cast<std::size_t>(i)].push_back(vertex_id(Vector(a + u * (b - a) + w * (c - a))));
      }
    }
    auto id = [&](int i, int j) {
      return ids[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < freq; ++i) {
      for (int j = 0; i + j < freq; ++j) {
        data->faces.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        if (i + j + 1 < freq) data->faces.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  }
  double max_chord = 0.0;
  for (auto& f : data->faces) {
    const Vector& a = data->dirs[static_cast<std::size_t>(f[0])];
    const Vector& b = data->dirs[static_cast<std::size_t>(f[1])];
    const Vector& c = data->dirs[static_cast<std::size_t>(f[2])];
    if (det3(a, b, c) < 0.0) std::swap(f[1], f[2]);
    max_chord = std::max({max_chord, (a - b).norm(), (b - c).norm(), (a - c).norm()});
  }
  data->step = strict_step(max_chord);
  require_step(data->step);
  return Grid(std::move(data));
}

std::optional<int> Grid::find_direction(const Vector& p) const {
  const double norm = p.norm();
  if (norm == 0.0) return std::nullopt;
  const Vector u = p / norm;
  if (dim() == 2) {
    double th = std::atan2(u[1], u[0]);
    if (th < 0.0) th += kTwoPi;
    const auto& ang = angles();
    const auto it = std::upper_bound(ang.begin(), ang.end(), th);
    const std::size_t hi = static_cast<std::size_t>(it - ang.begin()) % ang.size();
    const std::size_t lo = (hi + ang.size() - 1) % ang.size();
    for (std::size_t k : {lo, hi}) {
      if ((dirs()[k] - u).norm() <= kOnGridTol) return static_cast<int>(k);
    }
    return std::nullopt;
  }
  for (std::size_t k = 0; k < size(); ++k) {
    if ((dirs()[k] - u).norm() <= kOnGridTol) return static_cast<int>(k);
  }
  return std::nullopt;
}

Decomposition Grid::decompose(const Vector& p) const {
  if (dim_of(p) != dim()) {
    throw Error(ErrorCode::UnsupportedDimension, "direction dimension does not match the grid");
  }
  const double norm = p.norm();
  if (norm == 0.0) throw Error(ErrorCode::ZeroDirection, "cannot decompose the zero vector");
  if (const auto k = find_direction(p)) {
    Decomposition d;
    d.indices = {*k};
    d.alphas = {norm};
    d.alpha_sum = norm;
    d.p_hat = p / norm;
    return d;
  }
  return dim() == 2 ? decompose_2d(p, norm) : decompose_3d(p, norm);
}

Decomposition Grid::decompose_2d(const Vector& p, double norm) const {
  double th = std::atan2(p[1], p[0]);
  if (th < 0.0) th += kTwoPi;
  const auto& ang = angles();
  const auto it = std::upper_bound(ang.begin(), ang.end(), th);
  const std::size_t hi = static_cast<std::size_t>(it - ang.begin()) % ang.size();
  const std::size_t lo = (hi + ang.size() - 1) % ang.size();
  const Vector& a = dirs()[lo];
  const Vector& b = dirs()[hi];
  const double det = a[0] * b[1] - a[1] * b[0];
  const double alpha_a = (p[0] * b[1] - p[1] * b[0]) / det;
  const double alpha_b = (a[0] * p[1] - a[1] * p[0]) / det;
  if (!(alpha_a > 0.0) || !(alpha_b > 0.0)) {
    throw Error(ErrorCode::DecompositionFailure,
                "direction is not a positive combination of its angular neighbors");
  }
  Decomposition d;
  d.indices = {static_cast<int>(lo), static_cast<int>(hi)};
  d.alphas = {alpha_a, alpha_b};
  d.alpha_sum = alpha_a + alpha_b;
  d.p_hat = p / d.alpha_sum;
  (void)norm;
  return d;
}

Decomposition Grid::decompose_3d(const Vector& p, double norm) const {
  const Vector u = p / norm;
  for (const auto& f : faces()) {
    const Vector& a = dirs()[static_cast<std::size_t>(f[0])];
    const Vector& b = dirs()[static_cast<std::size_t>(f[1])];
    const Vector& c = dirs()[static_cast<std::size_t>(f[2])];
    // Slack admits directions on a shared edge that rounding puts just outside.
    constexpr double slack = -1e-14;
    if (det3(a, b, u) < slack || det3(b, c, u) < slack || det3(c, a, u) < slack) continue;
    Matrix m(3, 3);
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    const Vector alpha = m.fullPivLu().solve(p);
    // Directions on a face edge get a vanishing weight; drop it and refit.
    std::vector<int> keep;
    for (int k = 0; k < 3; ++k) {
      if (alpha[k] > 1e-14 * norm) keep.push_back(k);
    }
    Decomposition d;
    if (keep.size() == 3) {
      for (int k = 0; k < 3; ++k) {
        d.indices.push_back(f[static_cast<std::size_t>(k)]);
        d.alphas.push_back(alpha[k]);
      }
    } else {
      Matrix sub(3, static_cast<Eigen::Index>(keep.size()));
      for (std::size_t k = 0; k < keep.size(); ++k) {
        sub.col(static_cast<Eigen::Index>(k)) = m.col(keep[k]);
      }
      const Vector refit = sub.colPivHouseholderQr().solve(p);
      for (std::size_t k = 0; k < keep.size(); ++k) {
        if (!(refit[static_cast<Eigen::Index>(k)] > 0.0)) {
          throw Error(ErrorCode::DecompositionFailure, "nonpositive weight on a face edge");
        }
        d.indices.push_back(f[static_cast<std::size_t>(keep[k])]);
        d.alphas.push_back(refit[static_cast<Eigen::Index>(k)]);
      }
    }
    d.alpha_sum = 0.0;
    for (double w : d.alphas) d.alpha_sum += w;
    d.p_hat = p / d.alpha_sum;
    return d;
  }
  throw Error(ErrorCode::DecompositionFailure, "no face of the grid contains the direction");
}

std::vector<std::vector<int>> Grid::neighborhoods() const {
  std::vector<std::vector<int>> out;
  if (dim() == 2) {
    const int n = static_cast<int>(size());
    for (int k = 0; k < n; ++k) out.push_back({k, (k + 1) % n});
  } else {
    for (const auto& f : faces()) out.push_back({f[0], f[1], f[2]});
  }
  return out;
}

Grid Grid::with_reported_step(double step) const {
  auto data = std::make_shared<Data>(*data_);
  data->step = step;
  return Grid(std::move(data));
}

std::string export_grid(const Grid& grid) {
  std::string out = std::to_string(grid.dim()) + " " + std::to_string(grid.size()) + " " +
                    format_g(grid.step(), 17) + "\n";
  for (const auto& d : grid.dirs()) {
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      if (k > 0) out += ' ';
      out += format_g(d[k], 17);
    }
    out += '\n';
  }
  return out;
}

}  // namespace polyapprox
