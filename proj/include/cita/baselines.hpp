#pragma once

// Comparison texture descriptors. Each maps a grayscale image to a fixed
// length vector of doubles:
//
//   fourier  64  spectrum magnitude summed over 8 radial bands x 8 wedges
//   glcm     32  contrast/correlation/energy/homogeneity, 2 distances x 4 angles
//   gldm     60  five difference-density statistics, 3 distances x 4 angles
//   gabor    64  filter energy, 8 scales x 8 orientations
//   lbpv     10  variance-weighted rotation-invariant uniform LBP histogram

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cita/image.hpp"

namespace cita::baselines {

enum class Method { fourier, glcm, gldm, gabor, lbpv };

inline constexpr std::array<Method, 5> kAllMethods = {
    Method::fourier, Method::glcm, Method::gldm, Method::gabor, Method::lbpv};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::size_t dimension(Method m);
std::vector<double> compute(Method m, const GrayImage& img);

// ---------------------------------------------------------------------------
// Fourier

inline constexpr int kFourierBands = 8;
inline constexpr int kFourierWedges = 8;

/// Sector index band * 8 + wedge for a frequency (u, v) in cycles/pixel.
/// Bands split the radius 0..0.5 into equal widths, frequencies past Nyquist
/// fall into the outer band. Wedges split the angle mod 180 degrees into
/// equal parts measured from the +u axis. The origin is band 0, wedge 0, and
/// a frequency on a boundary belongs to the lower bin.
int fourier_sector(double u, double v);

/// Throws InvalidInput for images smaller than 2x2.
std::vector<double> fourier_descriptors(const GrayImage& img);

// ---------------------------------------------------------------------------
// GLCM

inline constexpr int kGlcmLevels = 64;

/// Contrast, correlation, energy, homogeneity of the normalised co-occurrence
/// matrix for pixel pairs (r, c) -> (r + dr, c + dc) after quantising to 64
/// levels. Correlation is 0 when either marginal has zero variance.
std::array<double, 4> haralick_for_offset(const GrayImage& img, int dr, int dc);

/// Distance-major (1, 2), then angle (0, 45, 90, 135), then the four
/// statistics. Throws InvalidInput for images smaller than 3x3.
std::vector<double> glcm_haralick(const GrayImage& img);

// ---------------------------------------------------------------------------
// GLDM

/// Contrast, angular second moment, entropy (natural log), mean and inverse
/// difference moment of the density of |I(r, c) - I(r + dr, c + dc)|.
std::array<double, 5> gldm_for_offset(const GrayImage& img, int dr, int dc);

/// Distance-major (1, 3, 5), then angle (0, 45, 90, 135), then the five
/// statistics. Throws InvalidInput for images smaller than 6x6.
std::vector<double> gldm(const GrayImage& img);

// ---------------------------------------------------------------------------
// Gabor

/// Frequency-domain Gabor bank. Each filter is a Gaussian in the rotated
/// (radial, tangential) frequency frame centred on (f, 0):
///   H(u, v) = exp(-(u' - f)^2 / (2 (k_r f)^2) - v'^2 / (2 (k_t f)^2))
/// with zero response at DC. The defaults give roughly one-octave radial
/// bandwidth and half-magnitude crossing between neighbouring orientations.
struct GaborBankConfig {
  int scales = 8;
  int orientations = 8;
  double min_frequency = 0.01;
  double max_frequency = 0.4;
  double radial_sigma_ratio = 0.2831;      // (1/3) / sqrt(2 ln 2)
  double tangential_sigma_ratio = 0.1689;  // tan(pi/16) / sqrt(2 ln 2)
};

/// Scale-major (lowest frequency first), then orientation k * pi / 8.
std::vector<double> gabor_frequencies(const GaborBankConfig& config = {});

/// Mean squared magnitude of each filter response. Scale-major vector.
std::vector<double> gabor_bank(const GrayImage& img,
                               const GaborBankConfig& config = {});

// ---------------------------------------------------------------------------
// LBPV

inline constexpr int kLbpvBins = 10;

/// Rotation-invariant uniform code of the 8 square neighbours at radius 1:
/// the number of neighbours >= centre for uniform patterns, 9 otherwise.
int lbp_riu2_code(std::uint8_t centre, const std::array<std::uint8_t, 8>& ring);

/// Histogram of riu2 codes over interior pixels, each pixel weighted by the
/// variance of its 8 neighbours, normalised to sum 1. A constant image
/// returns the zero vector. Throws InvalidInput for images smaller than 3x3.
std::vector<double> lbpv(const GrayImage& img);

}  // namespace cita::baselines
