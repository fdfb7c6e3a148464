#include "dobinski/interval.hpp"

#include <algorithm>

#include "dobinski/real.hpp"

namespace dobinski {

Rational Radius::rational_value(long cap) const {
  if (bracket) {
    if (lo != hi) throw DomainError("radius is a bracket, not an exact value");
    return lo;
  }
  if (!is_integer(exp2)) throw DomainError("radius 2^{-E} with fractional E has no rational value");
  return mantissa * pow2_rat(-num(exp2), cap);
}

std::pair<Rational, Rational> Radius::bounds(long prec) const {
  if (bracket) return {lo, hi};
  if (is_integer(exp2)) {
    Rational v = rational_value();
    return {v, v};
  }
  auto [slo, shi] = scale_bounds(exp2, prec);
  return {mantissa * slo, mantissa * shi};
}

namespace {

using Seg = std::pair<Rational, Rational>;

std::vector<Seg> clip_sorted(const IntervalFamily& f, const std::vector<Rational>& radii) {
  std::vector<Seg> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Rational& c = f.members[i].center;
    const Rational& r = radii[i];
    Rational a = c - r;
    if (a < 0) a = 0;
    Rational b = c + r;
    if (b > 1) b = 1;
    if (b > a) out.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// sorted in, disjoint out (touching segments coalesce)
std::vector<Seg> merge_sorted(std::vector<Seg> segs) {
  std::vector<Seg> out;
  for (auto& s : segs) {
    if (!out.empty() && s.first <= out.back().second) {
      if (s.second > out.back().second) out.back().second = std::move(s.second);
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

Rational total_length(const std::vector<Seg>& merged) {
  Rational t = 0;
  for (const auto& s : merged) t += s.second - s.first;
  return t;
}

std::vector<Rational> exact_radii(const IntervalFamily& f, long cap) {
  std::vector<Rational> r;
  r.reserve(f.size());
  for (const auto& iv : f.members) r.push_back(iv.radius.rational_value(cap));
  return r;
}

std::vector<Rational> bound_radii(const IntervalFamily& f, long prec, bool upper) {
  std::vector<Rational> r;
  r.reserve(f.size());
  for (const auto& iv : f.members) {
    auto [lo, hi] = iv.radius.bounds(prec);
    r.push_back(upper ? hi : lo);
  }
  return r;
}

Rational overlap_length(const std::vector<Seg>& A, const std::vector<Seg>& B) {
  Rational t = 0;
  std::size_t i = 0, j = 0;
  while (i < A.size() && j < B.size()) {
    const Rational& lo = std::max(A[i].first, B[j].first);
    const Rational& hi = std::min(A[i].second, B[j].second);
    if (hi > lo) t += hi - lo;
    if (A[i].second < B[j].second)
      ++i;
    else
      ++j;
  }
  return t;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> clipped_segments(const IntervalFamily& f, long cap) {
  return merge_sorted(clip_sorted(f, exact_radii(f, cap)));
}

Rational exact_measure(const IntervalFamily& f, long cap) {
  return total_length(clipped_segments(f, cap));
}

std::pair<Rational, Rational> measure_enclosure(const IntervalFamily& f, const Rational& tol,
                                                long max_prec) {
  if (f.all_rational()) {
    Rational m = exact_measure(f);
    return {m, m};
  }
  for (long prec = 96; prec <= max_prec; prec *= 2) {
    Rational mlo = total_length(merge_sorted(clip_sorted(f, bound_radii(f, prec, false))));
    Rational mhi = total_length(merge_sorted(clip_sorted(f, bound_radii(f, prec, true))));
    if (mhi - mlo <= tol) return {mlo, mhi};
  }
  throw PrecisionError("measure enclosure did not reach tolerance at the precision ceiling");
}

Rational intersect_measure(const IntervalFamily& f, const IntervalFamily& g, long cap) {
  auto A = clipped_segments(f, cap);
  auto B = clipped_segments(g, cap);
  return overlap_length(A, B);
}

std::pair<Rational, Rational> intersect_measure_enclosure(const IntervalFamily& f,
                                                          const IntervalFamily& g,
                                                          const Rational& tol, long max_prec) {
  if (f.all_rational() && g.all_rational()) {
    Rational m = intersect_measure(f, g);
    return {m, m};
  }
  for (long prec = 96; prec <= max_prec; prec *= 2) {
    auto Alo = merge_sorted(clip_sorted(f, bound_radii(f, prec, false)));
    auto Ahi = merge_sorted(clip_sorted(f, bound_radii(f, prec, true)));
    auto Blo = merge_sorted(clip_sorted(g, bound_radii(g, prec, false)));
    auto Bhi = merge_sorted(clip_sorted(g, bound_radii(g, prec, true)));
    Rational mlo = overlap_length(Alo, Blo);
    Rational mhi = overlap_length(Ahi, Bhi);
    if (mhi - mlo <= tol) return {mlo, mhi};
  }
  throw PrecisionError("intersection enclosure did not reach tolerance at the precision ceiling");
}

}  // namespace dobinski
