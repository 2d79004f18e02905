#pragma once

// Greedy construction of a set Z of centers such that the balls V_eps(z) are
// pairwise disjoint while the enlarged balls V_{cover_factor * eps}(z) cover
// a working region V_{rho_max}(0). Balls are geodesic, so disjointness and
// coverage reduce to distance comparisons.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hyptm/disk_geom.hpp"

namespace hyptm {

struct CoveringSpec {
  double eps = 0.5;
  double cover_factor = 3.0;
  double rho_max = 4.0;
  double lattice_step = 0.25;
  std::size_t candidate_cap = 10'000'000;

  /// Throws std::invalid_argument on non-positive sizes or cover_factor < 2.
  /// cover_factor * eps >= rho_max and lattice_step > eps are allowed; the
  /// first leaves an empty interior sample region, the second may leave gaps.
  void validate() const;
  double cover_radius() const { return cover_factor * eps; }
  /// Radius of the region on which coverage is verified.
  double interior_radius() const { return rho_max - cover_radius(); }
};

/// Concentric rings at j * lattice_step (plus a ring at rho_max when the last
/// regular ring falls more than half a step short), ring j carrying
/// ceil(2 pi A(rho_j) / lattice_step) equally spaced points, A = sinh cosh.
/// Sorted by radius, then angle. Throws std::length_error above the cap.
std::vector<DiskPoint> candidate_lattice(const CoveringSpec& spec);

/// Spatial index for ball queries: points bucketed in radial bands, ordered
/// by angle within a band.
class PointIndex {
 public:
  PointIndex(double band_width);
  void insert(const DiskPoint& p, std::size_t id);
  /// Calls fn(id, distance) for every stored point within distance <= radius.
  void for_each_within(const DiskPoint& x, double radius, const std::function<void(std::size_t, double)>& fn) const;
  /// True if some stored point lies at distance < radius.
  bool any_closer(const DiskPoint& x, double radius) const;

 private:
  struct Entry {
    DiskPoint point;
    std::size_t id;
  };
  template <class Fn>
  bool scan(const DiskPoint& x, double radius, Fn&& fn) const;

  double band_width_;
  std::map<long, std::multimap<double, Entry>> bands_;
};

struct CoveringResult {
  std::vector<DiskPoint> centers;
  std::size_t candidate_count = 0;
  /// Smallest pairwise geodesic distance (kDistanceCap for fewer than two).
  double min_pairwise_distance = kDistanceCap;
  bool disjoint = true;
  std::size_t multiplicity_empirical = 0;
  std::size_t multiplicity_bound = 0;
  std::size_t coverage_gap_count = 0;
  std::size_t coverage_samples = 0;
};

/// Greedy pass in (radius, angle) order: keep a candidate iff its distance
/// to every kept center is >= 2 eps. Fills centers, disjointness and the
/// volume bound.
CoveringResult greedy_select(const std::vector<DiskPoint>& candidates, const CoveringSpec& spec);

/// Exact minimum pairwise distance (brute force over index-filtered pairs).
double min_pairwise_distance(const std::vector<DiskPoint>& centers, double eps);

/// Points uniform in hyperbolic area on V_radius(0). Empty for radius <= 0.
std::vector<DiskPoint> area_samples(double radius, std::size_t count, std::uint64_t seed);

/// Number of samples farther than cover_radius from every center.
std::size_t coverage_gaps(const std::vector<DiskPoint>& centers, const CoveringSpec& spec,
                          const std::vector<DiskPoint>& samples);

/// Max over points of the number of centers within distance cover_radius.
std::size_t max_multiplicity(const std::vector<DiskPoint>& centers, double cover_radius,
                             const std::vector<DiskPoint>& points);

/// Sampled multiplicity on the interior region V_{rho_max - cover_radius}
/// (on {0} when that region is empty).
std::size_t multiplicity_estimate(const CoveringResult& result, const CoveringSpec& spec, std::size_t samples,
                                  std::uint64_t seed);

/// floor(mu(V_{2R}) / mu(V_eps)) with R = cover_factor * eps: a point lies in
/// V_R(z) only if V_eps(z), disjoint from the others, sits inside V_{2R}.
std::size_t multiplicity_bound(const CoveringSpec& spec);

/// Lattice, greedy pass, exact disjointness check, coverage and
/// multiplicity on `samples` interior points.
CoveringResult build_covering(const CoveringSpec& spec, std::size_t samples, std::uint64_t seed);

}  // namespace hyptm
