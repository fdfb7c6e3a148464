#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dobinski/interval.hpp"
#include "dobinski/setspec.hpp"

namespace dobinski {

// Dyadic boxes [j 2^{-m}, (j+1) 2^{-m}] meeting the union with positive length.
// m = 0 counts the whole line as one box.
BigInt box_count(const IntervalFamily& f, long m, long cap = kDefaultExponentCap);

// Closed-form count for a stage family with radius 2^{-E}, integer E >= n+2,
// at grid m = E: interior centers hit two boxes, the two ends one each.
std::optional<BigInt> stage_box_count_symbolic(const SetSpec& spec, long n,
                                               long cap = kDefaultExponentCap);

struct FitSample {
  long m = 0;      // grid exponent
  BigInt count;    // box count at that grid
};

enum class FitMode {
  Ordinary,     // regress log2 N against m
  Logarithmic,  // regress log2 N against log2 m
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<std::pair<double, double>> points;  // (x, log2 N) as fitted
};

// Least squares over the chosen x convention.
FitResult dim_fit(const std::vector<FitSample>& samples, FitMode mode);

}  // namespace dobinski
