#include "baselines/spectrum.hpp"

#include <fftw3.h>

#include <mutex>
#include <numeric>

namespace cita::baselines::detail {

namespace {
// FFTW's planner is not thread-safe; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Spectrum dft2(const GrayImage& img) {
  const int h = img.height;
  const int w = img.width;
  const std::size_t n = img.size();
  const auto sum = std::accumulate(img.pixels.begin(), img.pixels.end(),
                                   static_cast<std::uint64_t>(0));
  const double mean = static_cast<double>(sum) / static_cast<double>(n);

  Spectrum out{h, w, std::vector<std::complex<double>>(n)};
  for (std::size_t k = 0; k < n; ++k) out.bins[k] = img.pixels[k] - mean;

  auto* data = reinterpret_cast<fftw_complex*>(out.bins.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(h, w, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute_dft(plan, data, data);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  out.bins[0] = static_cast<double>(sum);
  return out;
}

}  // namespace cita::baselines::detail
