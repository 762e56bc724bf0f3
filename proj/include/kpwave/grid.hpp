#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpwave {

/// Periodic rectangle [x_min, x_max) x [y_min, y_max).
struct Domain {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double x_length() const { return x_max - x_min; }
  double y_length() const { return y_max - y_min; }
  bool operator==(const Domain&) const = default;
};

/// Sample geometry of a field: nx columns along x, ny rows along y.
struct Geometry {
  std::size_t nx = 0;
  std::size_t ny = 0;
  Domain domain;

  double dx() const { return domain.x_length() / static_cast<double>(nx); }
  double dy() const { return domain.y_length() / static_cast<double>(ny); }
  double x(std::size_t i) const { return domain.x_min + static_cast<double>(i) * dx(); }
  double y(std::size_t j) const { return domain.y_min + static_cast<double>(j) * dy(); }
  std::size_t size() const { return nx * ny; }
  bool operator==(const Geometry&) const = default;
};

/// Real samples on a periodic rectangle, row-major with y as the slow index.
struct Field2D {
  Geometry geometry;
  std::vector<double> values;

  Field2D() = default;
  explicit Field2D(const Geometry& g) : geometry(g), values(g.size(), 0.0) {}

  double& operator()(std::size_t ix, std::size_t iy) { return values[iy * geometry.nx + ix]; }
  double operator()(std::size_t ix, std::size_t iy) const { return values[iy * geometry.nx + ix]; }
  std::span<const double> row(std::size_t iy) const {
    return std::span<const double>(values).subspan(iy * geometry.nx, geometry.nx);
  }
};

/// Grid geometry plus wavenumbers in standard FFT ordering:
/// k[m] = 2 pi m / length for m < n/2 and 2 pi (m - n) / length otherwise,
/// so the Nyquist mode carries the negative wavenumber -pi n / length.
class SpectralGrid {
 public:
  const Geometry& geometry() const { return geometry_; }
  std::size_t nx() const { return geometry_.nx; }
  std::size_t ny() const { return geometry_.ny; }
  /// Number of retained x-modes in the half spectrum of a real field.
  std::size_t nx_half() const { return geometry_.nx / 2 + 1; }
  const Domain& domain() const { return geometry_.domain; }
  std::span<const double> kx() const { return kx_; }
  std::span<const double> ky() const { return ky_; }

  /// Wavenumber of half-spectrum column m (0 <= m <= nx/2); the last column is Nyquist.
  double kx_half(std::size_t m) const { return kx_[m]; }

 private:
  friend SpectralGrid make_grid(std::size_t, std::size_t, const Domain&);
  Geometry geometry_;
  std::vector<double> kx_;
  std::vector<double> ky_;
};

/// Throws ConfigError unless nx, ny are powers of two >= 16 and the domain is a
/// nonempty finite rectangle.
SpectralGrid make_grid(std::size_t nx, std::size_t ny, const Domain& domain);

/// Wavenumbers 2 pi m / length in FFT ordering for any n >= 1.
std::vector<double> fft_wavenumbers(std::size_t n, double length);

bool is_power_of_two(std::size_t n);

}  // namespace kpwave
