#include "cita/baselines.hpp"

namespace cita::baselines {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::fourier: return "fourier";
    case Method::glcm: return "glcm";
    case Method::gldm: return "gldm";
    case Method::gabor: return "gabor";
    case Method::lbpv: return "lbpv";
  }
  return "";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (method_name(m) == name) return m;
  return std::nullopt;
}

std::size_t dimension(Method m) {
  switch (m) {
    case Method::fourier: return kFourierBands * kFourierWedges;
    case Method::glcm: return 32;
    case Method::gldm: return 60;
    case Method::gabor: return 64;
    case Method::lbpv: return kLbpvBins;
  }
  return 0;
}

std::vector<double> compute(Method m, const GrayImage& img) {
  switch (m) {
    case Method::fourier: return fourier_descriptors(img);
    case Method::glcm: return glcm_haralick(img);
    case Method::gldm: return gldm(img);
    case Method::gabor: return gabor_bank(img);
    case Method::lbpv: return lbpv(img);
  }
  throw InvalidInput("unknown baseline method");
}

}  // namespace cita::baselines
