#include "kpwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpwave/error.hpp"

namespace kpwave {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> fft_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    auto index = static_cast<std::ptrdiff_t>(m);
    if (index >= half && n > 1) index -= static_cast<std::ptrdiff_t>(n);
    k[m] = base * static_cast<double>(index);
  }
  return k;
}

SpectralGrid make_grid(std::size_t nx, std::size_t ny, const Domain& domain) {
  for (auto [n, name] : {std::pair{nx, "nx"}, std::pair{ny, "ny"}}) {
    if (n < 16 || !is_power_of_two(n)) {
      throw ConfigError(std::string(name) + " must be a power of two >= 16, got " +
                        std::to_string(n));
    }
  }
  const bool finite = std::isfinite(domain.x_min) && std::isfinite(domain.x_max) &&
                      std::isfinite(domain.y_min) && std::isfinite(domain.y_max);
  if (!finite || !(domain.x_length() > 0.0) || !(domain.y_length() > 0.0)) {
    throw ConfigError("grid domain must be a nonempty finite rectangle");
  }
  SpectralGrid g;
  g.geometry_ = Geometry{nx, ny, domain};
  g.kx_ = fft_wavenumbers(nx, domain.x_length());
  g.ky_ = fft_wavenumbers(ny, domain.y_length());
  return g;
}

}  // namespace kpwave
