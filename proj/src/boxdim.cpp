#include "dobinski/boxdim.hpp"

#include <cmath>

namespace dobinski {

namespace {

// exact log2 for huge counts: mantissa in [0.5,1) plus exponent
double big_log2(const BigInt& v) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, v.backend().data());
  return std::log2(d) + static_cast<double>(e);
}

}  // namespace

BigInt box_count(const IntervalFamily& f, long m, long cap) {
  if (m < 0) throw DomainError("grid exponent must be >= 0");
  if (m > cap) throw CapError("grid exponent exceeds the cap");
  if (f.members.empty()) return 0;
  if (m == 0) return 1;
  auto segs = clipped_segments(f, cap);
  if (segs.empty()) return 0;
  BigInt scale = pow2(m);
  BigInt total = 0;
  BigInt last = -1;  // right-most box already counted
  for (const auto& [a, b] : segs) {
    // boxes j with j < b*2^m and j+1 > a*2^m
    Rational lo_q = a * scale;
    Rational hi_q = b * scale;
    BigInt jmin = floor_rat(lo_q);  // first box with positive overlap
    BigInt jmax;                    // last box: ceil(hi) - 1
    if (is_integer(hi_q))
      jmax = num(hi_q) - 1;
    else
      jmax = floor_rat(hi_q);
    if (jmax < jmin) continue;
    if (jmin <= last) jmin = last + 1;
    if (jmax < jmin) continue;
    total += jmax - jmin + 1;
    last = jmax;
  }
  return total;
}

std::optional<BigInt> stage_box_count_symbolic(const SetSpec& spec, long n, long cap) {
  if (n < 0) throw DomainError("stage must be >= 0");
  Radius r = spec.stage_radius(n, cap);
  auto E = r.log2_exact();
  if (!E || !is_integer(*E)) return std::nullopt;
  BigInt e = num(*E);
  if (e < n + 2) return std::nullopt;  // members overlap or touch; the formula needs gaps
  // at grid m = E every center j/2^n sits on a box corner: the ball around it
  // covers one box on each side, except the two endpoint centers (clipped).
  return pow2(n + 1, cap);
}

FitResult dim_fit(const std::vector<FitSample>& samples, FitMode mode) {
  if (samples.size() < 2) throw DomainError("need at least two samples to fit");
  FitResult out;
  out.points.reserve(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    if (s.count <= 0) throw DomainError("box counts must be positive");
    double x;
    if (mode == FitMode::Ordinary) {
      x = static_cast<double>(s.m);
    } else {
      if (s.m <= 0) throw DomainError("logarithmic fit needs m >= 1");
      x = std::log2(static_cast<double>(s.m));
    }
    double y = big_log2(s.count);
    out.points.emplace_back(x, y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(samples.size());
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw DomainError("fit needs at least two distinct scales");
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  for (const auto& [x, y] : out.points) {
    double r = std::fabs(y - (out.slope * x + out.intercept));
    if (r > out.max_residual) out.max_residual = r;
  }
  return out;
}

}  // namespace dobinski
