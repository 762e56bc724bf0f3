#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace kpwave {

/// Number of threads handed to the FFT backend: the KP_THREADS environment
/// variable when it holds a positive integer, otherwise the hardware concurrency.
int fft_thread_count();

/// Real-to-complex transform pair of a rows x cols real array (row-major, cols fast).
///
/// The spectrum keeps cols/2 + 1 columns. `forward` returns normalised Fourier
/// coefficients (divided by rows * cols) so that `inverse` is its exact inverse.
/// Instances own their scratch buffers and are not safe for concurrent use;
/// distinct instances may run on different threads.
class RealFft {
 public:
  RealFft(std::size_t rows, std::size_t cols);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t real_size() const { return rows_ * cols_; }
  std::size_t spectrum_size() const { return rows_ * (cols_ / 2 + 1); }

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

  /// Direct access to the owned buffers for fused kernels. `execute_forward` maps
  /// real_buffer() to spectrum_buffer() without normalisation; `execute_inverse`
  /// maps spectrum_buffer() to real_buffer() and clobbers the spectrum buffer.
  std::span<double> real_buffer();
  std::span<std::complex<double>> spectrum_buffer();
  void execute_forward();
  void execute_inverse();

 private:
  struct Impl;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kpwave
