#include "hyptm/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hyptm/parallel.hpp"
#include "hyptm/polar_grid.hpp"

namespace hyptm {

void CoveringSpec::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("covering: eps must be positive");
  if (!(cover_factor >= 2.0)) throw std::invalid_argument("covering: cover_factor must be at least 2");
  if (!(rho_max > 0.0)) throw std::invalid_argument("covering: rho_max must be positive");
  if (!(lattice_step > 0.0)) throw std::invalid_argument("covering: lattice_step must be positive");
  if (rho_max > kPolarRhoLimit) throw std::invalid_argument("covering: rho_max beyond the representable range");
}

std::vector<DiskPoint> candidate_lattice(const CoveringSpec& spec) {
  spec.validate();
  std::vector<double> radii{0.0};
  const auto rings = static_cast<long>(std::floor(spec.rho_max / spec.lattice_step + 1e-12));
  for (long j = 1; j <= rings; ++j) radii.push_back(static_cast<double>(j) * spec.lattice_step);
  if (rings >= 1 && spec.rho_max - radii.back() > 0.5 * spec.lattice_step) radii.push_back(spec.rho_max);

  std::size_t total = 0;
  std::vector<std::size_t> counts;
  for (double rho : radii) {
    const double n = rho == 0.0 ? 1.0 : std::ceil(2.0 * std::numbers::pi * metric_area_factor(rho) / spec.lattice_step);
    if (n > static_cast<double>(spec.candidate_cap)) throw std::length_error("covering: candidate cap exceeded");
    counts.push_back(static_cast<std::size_t>(n));
    total += counts.back();
    if (total > spec.candidate_cap) throw std::length_error("covering: candidate cap exceeded");
  }
  std::vector<DiskPoint> out;
  out.reserve(total);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double dth = 2.0 * std::numbers::pi / static_cast<double>(counts[k]);
    for (std::size_t j = 0; j < counts[k]; ++j) out.push_back(polar_lift(radii[k], static_cast<double>(j) * dth));
  }
  return out;
}

PointIndex::PointIndex(double band_width) : band_width_(band_width) {
  if (!(band_width > 0.0)) throw std::invalid_argument("PointIndex: band width must be positive");
}

void PointIndex::insert(const DiskPoint& p, std::size_t id) {
  const PolarPoint q = disk_drop(p);
  bands_[static_cast<long>(std::floor(q.rho / band_width_))].emplace(q.theta, Entry{p, id});
}

template <class Fn>
bool PointIndex::scan(const DiskPoint& x, double radius, Fn&& fn) const {
  const PolarPoint q = disk_drop(x);
  const long lo = static_cast<long>(std::floor((q.rho - radius) / band_width_));
  const long hi = static_cast<long>(std::floor((q.rho + radius) / band_width_));
  for (auto it = bands_.lower_bound(lo); it != bands_.end() && it->first <= hi; ++it) {
    const auto& band = it->second;
    // Angular half-width: a point at radius >= rho_lo within `radius` of x lies
    // within `radius` of the diameter through x, sinh(2 d) = sinh(2 rho) sin(dtheta).
    const double rho_lo = std::max(static_cast<double>(it->first) * band_width_, q.rho - radius);
    const double ratio = rho_lo > 0.0 ? std::sinh(2.0 * radius) / std::sinh(2.0 * rho_lo) : 2.0;
    auto visit = [&](auto first, auto last) {
      for (auto e = first; e != last; ++e) {
        const double d = geodesic_distance(x, e->second.point);
        if (fn(e->second.id, d)) return true;
      }
      return false;
    };
    if (ratio >= 1.0) {
      if (visit(band.begin(), band.end())) return true;
      continue;
    }
    const double alpha = std::asin(ratio) + 1e-12;
    const double a = q.theta - alpha;
    const double b = q.theta + alpha;
    const double two_pi = 2.0 * std::numbers::pi;
    if (a < 0.0) {
      if (visit(band.lower_bound(a + two_pi), band.end())) return true;
      if (visit(band.begin(), band.upper_bound(b))) return true;
    } else if (b >= two_pi) {
      if (visit(band.lower_bound(a), band.end())) return true;
      if (visit(band.begin(), band.upper_bound(b - two_pi))) return true;
    } else {
      if (visit(band.lower_bound(a), band.upper_bound(b))) return true;
    }
  }
  return false;
}

void PointIndex::for_each_within(const DiskPoint& x, double radius,
                                 const std::function<void(std::size_t, double)>& fn) const {
  scan(x, radius, [&](std::size_t id, double d) {
    if (d <= radius) fn(id, d);
    return false;
  });
}

bool PointIndex::any_closer(const DiskPoint& x, double radius) const {
  return scan(x, radius, [&](std::size_t, double d) { return d < radius; });
}

CoveringResult greedy_select(const std::vector<DiskPoint>& candidates, const CoveringSpec& spec) {
  spec.validate();
  std::vector<std::size_t> order(candidates.size());
  std::vector<PolarPoint> polar(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    order[k] = k;
    polar[k] = disk_drop(candidates[k]);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (polar[a].rho != polar[b].rho) return polar[a].rho < polar[b].rho;
    return polar[a].theta < polar[b].theta;
  });

  CoveringResult res;
  res.candidate_count = candidates.size();
  PointIndex index(2.0 * spec.eps);
  for (std::size_t k : order) {
    if (index.any_closer(candidates[k], 2.0 * spec.eps)) continue;
    index.insert(candidates[k], res.centers.size());
    res.centers.push_back(candidates[k]);
  }
  res.min_pairwise_distance = min_pairwise_distance(res.centers, spec.eps);
  res.disjoint = res.min_pairwise_distance >= 2.0 * spec.eps;
  res.multiplicity_bound = multiplicity_bound(spec);
  return res;
}

double min_pairwise_distance(const std::vector<DiskPoint>& centers, double eps) {
  if (centers.size() < 2) return kDistanceCap;
  PointIndex index(2.0 * eps);
  for (std::size_t k = 0; k < centers.size(); ++k) index.insert(centers[k], k);
  std::vector<double> best(centers.size(), kDistanceCap);
  // Pairs farther apart than 4 eps cannot decide the minimum against 2 eps,
  // so the search radius only needs to exceed the threshold.
  const double radius = 4.0 * eps;
  parallel_for(centers.size(), [&](std::size_t k) {
    index.for_each_within(centers[k], radius, [&](std::size_t id, double d) {
      if (id != k) best[k] = std::min(best[k], d);
    });
  });
  return *std::min_element(best.begin(), best.end());
}

std::vector<DiskPoint> area_samples(double radius, std::size_t count, std::uint64_t seed) {
  std::vector<DiskPoint> out;
  if (!(radius > 0.0)) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double s = std::sinh(radius);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double rho = std::asinh(s * std::sqrt(unit(rng)));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    out.push_back(polar_lift(std::min(rho, radius), theta));
  }
  return out;
}

std::size_t coverage_gaps(const std::vector<DiskPoint>& centers, const CoveringSpec& spec,
                          const std::vector<DiskPoint>& samples) {
  PointIndex index(spec.cover_radius());
  for (std::size_t k = 0; k < centers.size(); ++k) index.insert(centers[k], k);
  std::vector<unsigned char> gap(samples.size(), 0);
  const double r = spec.cover_radius();
  parallel_for(samples.size(), [&](std::size_t k) {
    bool hit = false;
    index.for_each_within(samples[k], r, [&](std::size_t, double) { hit = true; });
    gap[k] = hit ? 0 : 1;
  });
  return static_cast<std::size_t>(std::count(gap.begin(), gap.end(), 1));
}

std::size_t max_multiplicity(const std::vector<DiskPoint>& centers, double cover_radius,
                             const std::vector<DiskPoint>& points) {
  PointIndex index(cover_radius);
  for (std::size_t k = 0; k < centers.size(); ++k) index.insert(centers[k], k);
  std::vector<std::size_t> mult(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t k) {
    std::size_t c = 0;
    index.for_each_within(points[k], cover_radius, [&](std::size_t, double) { ++c; });
    mult[k] = c;
  });
  return mult.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
}

std::size_t multiplicity_estimate(const CoveringResult& result, const CoveringSpec& spec, std::size_t samples,
                                  std::uint64_t seed) {
  std::vector<DiskPoint> pts = area_samples(spec.interior_radius(), samples, seed);
  if (pts.empty()) pts.push_back(DiskPoint{});
  return max_multiplicity(result.centers, spec.cover_radius(), pts);
}

std::size_t multiplicity_bound(const CoveringSpec& spec) {
  return static_cast<std::size_t>(std::floor(ball_area(2.0 * spec.cover_radius()) / ball_area(spec.eps)));
}

CoveringResult build_covering(const CoveringSpec& spec, std::size_t samples, std::uint64_t seed) {
  CoveringResult res = greedy_select(candidate_lattice(spec), spec);
  const std::vector<DiskPoint> pts = area_samples(spec.interior_radius(), samples, seed);
  res.coverage_samples = pts.size();
  res.coverage_gap_count = coverage_gaps(res.centers, spec, pts);
  res.multiplicity_empirical = multiplicity_estimate(res, spec, samples, seed);
  return res;
}

}  // namespace hyptm
