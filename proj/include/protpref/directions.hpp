#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "protpref/ranking.hpp"

namespace protpref {

/// Unit vector: the direction in which a linear utility increases.
class DirectionPoint {
 public:
  static constexpr double kNormTolerance = 1e-9;

  /// Coordinates must have unit norm within kNormTolerance.
  explicit DirectionPoint(std::vector<double> coordinates);
  /// Normalizes; Error{ZeroVector} when the norm is zero.
  static DirectionPoint normalized(std::vector<double> coordinates);

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<double>& coordinates() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const DirectionPoint&, const DirectionPoint&) = default;

 private:
  std::vector<double> coords_;
};

double chordal_distance(const DirectionPoint& a, const DirectionPoint& b);

/// Normalized utility gradient.
DirectionPoint direction_from_utility(const UtilityVector& u);

/// Normalized arithmetic mean. Inputs are summed in sorted order, so the
/// result is exactly invariant under permutation. Error{AntipodalDegenerate}
/// when the mean has norm below 1e-12.
DirectionPoint aggregate_directions(std::span<const DirectionPoint> points);

/// Two direction profiles close in input but far apart after aggregation.
struct DiscontinuityWitness {
  std::size_t dimension = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t axis_u = 0;  // coordinate plane of the construction
  std::size_t axis_v = 1;
  std::vector<DirectionPoint> first;
  std::vector<DirectionPoint> second;
  DirectionPoint first_output = DirectionPoint({1.0});
  DirectionPoint second_output = DirectionPoint({1.0});
  double input_distance = 0.0;   // sum of per-individual chordal distances
  double output_distance = 0.0;

  /// Re-runs the aggregator and checks the stored outputs and distances.
  bool verify() const;
};

/// Construction near the antipodal configuration: v1 = e_u fixed,
/// v2 = -cos(eps) e_u +/- sin(eps) e_v. Requires m >= 2, eps in (0, 0.1).
DiscontinuityWitness continuity_probe(std::size_t dimension, double epsilon, std::uint64_t seed);

/// Counts of random trials on which aggregate_directions met continuous
/// unanimity (n copies of v map to v within kNormTolerance) and continuous
/// anonymity (a random reordering gives a bit-identical output).
struct ContinuousAxiomCheck {
  std::size_t trials = 0;
  std::size_t unanimity_passes = 0;
  std::size_t anonymity_passes = 0;
};

ContinuousAxiomCheck check_continuous_axioms(std::size_t dimension, std::size_t n,
                                             std::size_t trials, std::uint64_t seed);

}  // namespace protpref
