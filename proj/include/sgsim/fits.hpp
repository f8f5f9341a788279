#pragma once

#include "sgsim/measure.hpp"

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

// Least-squares extraction of the scaling quantities: generic lines,
// the Cardy finite-size formula, central charge from entropy scaling and
// entanglement-spectrum level spacing.

namespace sgsim::fits {

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  std::array<std::array<double, 2>, 2> covariance{}; // (slope, intercept) block
  double residual_rms = 0.0;
  std::size_t window_begin = 0; // [begin, end) subrange actually used
  std::size_t window_end = 0;
};

inline constexpr std::size_t kFullRange = static_cast<std::size_t>(-1);

// Ordinary least squares y = slope x + intercept over [begin, end).
FitResult fit_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                     std::size_t begin = 0, std::size_t end = kFullRange);

// window policy for power-law scans: drop the two smallest and two largest
// grid points when enough data exists
std::pair<std::size_t, std::size_t> interior_window(std::size_t n);

struct CardyFit {
  double e0 = 0.0; // bulk energy density
  double u = 0.0;  // velocity
  double b = 0.0;  // non-universal boundary constant
  double residual_rms = 0.0;
};

// Fits E(L) = e0 L + b - pi c u / (24 L) with the central charge supplied.
CardyFit fit_cardy(const std::vector<std::pair<std::size_t, double>>& energies,
                   double c);

// Slope of S vs ln(xi) times 6, intercept included. xs must be the
// correlation lengths (monotone increasing across the chi scan).
double fit_central_charge(const std::vector<std::pair<double, double>>& xi_entropy);

// Slope of cluster-mean level vs cluster index over the first three
// distinct clusters of the spectrum.
double extract_es_spacing(const EntanglementSpectrum& spec);

} // namespace sgsim::fits
