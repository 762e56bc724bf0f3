#include "kpwave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "kpwave/error.hpp"

namespace kpwave {

namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_threads_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { fftw_init_threads(); });
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

int fft_thread_count() {
  if (const char* env = std::getenv("KP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct RealFft::Impl {
  std::unique_ptr<double, FftwFree> real;
  std::unique_ptr<fftw_complex, FftwFree> spec;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  double scale = 1.0;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

RealFft::RealFft(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), impl_(std::make_unique<Impl>()) {
  if (rows == 0 || cols < 2) throw ConfigError("FFT dimensions too small");
  const std::size_t nspec = rows * (cols / 2 + 1);
  impl_->real.reset(static_cast<double*>(fftw_malloc(sizeof(double) * rows * cols)));
  impl_->spec.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nspec)));
  if (!impl_->real || !impl_->spec) throw std::bad_alloc();
  impl_->scale = 1.0 / static_cast<double>(rows * cols);

  init_threads_once();
  std::lock_guard lock(planner_mutex());
  // Small transforms gain nothing from threads.
  fftw_plan_with_nthreads(rows * cols >= 4096 ? fft_thread_count() : 1);
  // FFTW_ESTIMATE keeps plan selection, and therefore rounding, reproducible run to run.
  const unsigned flags = FFTW_ESTIMATE;
  const int r = static_cast<int>(rows);
  const int c = static_cast<int>(cols);
  if (rows == 1) {
    impl_->forward = fftw_plan_dft_r2c_1d(c, impl_->real.get(), impl_->spec.get(), flags);
    impl_->backward = fftw_plan_dft_c2r_1d(c, impl_->spec.get(), impl_->real.get(), flags);
  } else {
    impl_->forward = fftw_plan_dft_r2c_2d(r, c, impl_->real.get(), impl_->spec.get(), flags);
    impl_->backward = fftw_plan_dft_c2r_2d(r, c, impl_->spec.get(), impl_->real.get(), flags);
  }
  if (!impl_->forward || !impl_->backward) throw Error("FFTW planning failed");
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.size() != real_size() || out.size() != spectrum_size()) {
    throw InputError("RealFft::forward size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real.get());
  fftw_execute(impl_->forward);
  const auto* spec = reinterpret_cast<const std::complex<double>*>(impl_->spec.get());
  const double scale = impl_->scale;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec[i] * scale;
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() != spectrum_size() || out.size() != real_size()) {
    throw InputError("RealFft::inverse size mismatch");
  }
  // c2r overwrites its input, so always work on the owned buffer.
  std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(impl_->spec.get()));
  fftw_execute(impl_->backward);
  std::copy(impl_->real.get(), impl_->real.get() + out.size(), out.begin());
}

std::span<double> RealFft::real_buffer() { return {impl_->real.get(), real_size()}; }

std::span<std::complex<double>> RealFft::spectrum_buffer() {
  return {reinterpret_cast<std::complex<double>*>(impl_->spec.get()), spectrum_size()};
}

void RealFft::execute_forward() { fftw_execute(impl_->forward); }

void RealFft::execute_inverse() { fftw_execute(impl_->backward); }

}  // namespace kpwave
