#include "cointreg/convolution.hpp"

#include "cointreg/errors.hpp"

#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>

namespace cointreg {

namespace {

constexpr std::size_t direct_tap_limit = 64;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex()
{
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::size_t fft_size(std::size_t min_len)
{
  std::size_t n = 1;
  while (n < min_len)
    n <<= 1;
  return n;
}

std::vector<double> direct_filter(std::span<const double> input,
                                  std::span<const double> taps,
                                  std::size_t first,
                                  std::size_t count)
{
  std::vector<double> out(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t t = first + i;
    double acc = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k)
      acc += taps[k] * input[t - k];
    out[i] = acc;
  }
  return out;
}

std::vector<double> fft_filter(std::span<const double> input,
                               std::span<const double> taps,
                               std::size_t first,
                               std::size_t count)
{
  const std::size_t lag = taps.size() - 1;
  const std::size_t seg_len = count + lag;
  const std::size_t n = fft_size(seg_len);
  const std::size_t bins = n / 2 + 1;

  std::unique_ptr<double, FftwFree> signal(fftw_alloc_real(n));
  std::unique_ptr<double, FftwFree> kernel(fftw_alloc_real(n));
  std::unique_ptr<fftw_complex, FftwFree> sig_hat(fftw_alloc_complex(bins));
  std::unique_ptr<fftw_complex, FftwFree> ker_hat(fftw_alloc_complex(bins));

  fftw_plan fwd_sig, fwd_ker, inv;
  {
    std::lock_guard lock(planner_mutex());
    fwd_sig = fftw_plan_dft_r2c_1d(static_cast<int>(n), signal.get(), sig_hat.get(), FFTW_ESTIMATE);
    fwd_ker = fftw_plan_dft_r2c_1d(static_cast<int>(n), kernel.get(), ker_hat.get(), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), sig_hat.get(), signal.get(), FFTW_ESTIMATE);
  }

  const std::size_t seg_start = first - lag;
  for (std::size_t i = 0; i < n; ++i) {
    signal.get()[i] = i < seg_len ? input[seg_start + i] : 0.0;
    kernel.get()[i] = i < taps.size() ? taps[i] : 0.0;
  }
  fftw_execute(fwd_sig);
  fftw_execute(fwd_ker);
  for (std::size_t b = 0; b < bins; ++b) {
    const std::complex<double> a(sig_hat.get()[b][0], sig_hat.get()[b][1]);
    const std::complex<double> k(ker_hat.get()[b][0], ker_hat.get()[b][1]);
    const auto prod = a * k;
    sig_hat.get()[b][0] = prod.real();
    sig_hat.get()[b][1] = prod.imag();
  }
  fftw_execute(inv);

  std::vector<double> out(count);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = signal.get()[lag + i] * norm;

  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_sig);
    fftw_destroy_plan(fwd_ker);
    fftw_destroy_plan(inv);
  }
  return out;
}

} // namespace

std::vector<double> causal_filter(std::span<const double> input,
                                  std::span<const double> taps,
                                  std::size_t first,
                                  std::size_t count)
{
  require(!taps.empty(), "filter needs at least one tap");
  require(first + 1 >= taps.size(), "filter history too short for tap count");
  require(first + count <= input.size(), "filter range exceeds input");
  if (count == 0)
    return {};
  if (taps.size() <= direct_tap_limit)
    return direct_filter(input, taps, first, count);
  return fft_filter(input, taps, first, count);
}

} // namespace cointreg
