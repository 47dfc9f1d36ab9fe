#include "protpref/directions.hpp"

#include <algorithm>
#include <cmath>

#include "protpref/error.hpp"
#include "protpref/rng.hpp"

namespace protpref {

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

DirectionPoint::DirectionPoint(std::vector<double> coordinates) : coords_(std::move(coordinates)) {
  if (coords_.empty()) throw Error(ErrorKind::BadSpec, "direction of dimension 0");
  for (double x : coords_)
    if (!std::isfinite(x)) throw Error(ErrorKind::BadSpec, "non-finite direction coordinate");
  if (std::abs(norm(coords_) - 1.0) > kNormTolerance)
    throw Error(ErrorKind::BadSpec, "direction is not a unit vector");
}

DirectionPoint DirectionPoint::normalized(std::vector<double> coordinates) {
  const double length = norm(coordinates);
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorKind::ZeroVector, "cannot normalize a zero vector");
  for (double& x : coordinates) x /= length;
  return DirectionPoint(std::move(coordinates));
}

double chordal_distance(const DirectionPoint& a, const DirectionPoint& b) {
  if (a.dimension() != b.dimension())
    throw Error(ErrorKind::Incompatible, "directions of different dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

DirectionPoint direction_from_utility(const UtilityVector& u) {
  return DirectionPoint::normalized(u.values);
}

DirectionPoint aggregate_directions(std::span<const DirectionPoint> points) {
  if (points.empty()) throw Error(ErrorKind::BadSpec, "no directions to aggregate");
  const std::size_t dim = points.front().dimension();
  std::vector<const std::vector<double>*> sorted;
  for (const auto& p : points) {
    if (p.dimension() != dim) throw Error(ErrorKind::Incompatible, "directions of different dimension");
    sorted.push_back(&p.coordinates());
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return *a < *b; });

  std::vector<double> mean(dim, 0.0);
  for (const auto* v : sorted)
    for (std::size_t i = 0; i < dim; ++i) mean[i] += (*v)[i];
  for (double& x : mean) x /= static_cast<double>(points.size());
  if (norm(mean) < 1e-12)
    throw Error(ErrorKind::AntipodalDegenerate, "mean direction vanishes; aggregate undefined");
  return DirectionPoint::normalized(std::move(mean));
}

bool DiscontinuityWitness::verify() const {
  if (first.size() != second.size() || first.empty()) return false;
  double input = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) input += chordal_distance(first[i], second[i]);
  try {
    const auto out1 = aggregate_directions(first);
    const auto out2 = aggregate_directions(second);
    return out1 == first_output && out2 == second_output && input == input_distance &&
           chordal_distance(out1, out2) == output_distance;
  } catch (const Error&) {
    return false;
  }
}

DiscontinuityWitness continuity_probe(std::size_t dimension, double epsilon, std::uint64_t seed) {
  if (dimension < 2) throw Error(ErrorKind::BadSpec, "continuity probe needs dimension >= 2");
  if (!(epsilon > 0.0) || !(epsilon < 0.1))
    throw Error(ErrorKind::BadSpec, "continuity probe needs epsilon in (0, 0.1)");

  DiscontinuityWitness w;
  w.dimension = dimension;
  w.epsilon = epsilon;
  w.seed = seed;
  if (dimension > 2) {
    Rng rng(seed);
    w.axis_u = static_cast<std::size_t>(rng.below(dimension));
    w.axis_v = static_cast<std::size_t>(rng.below(dimension - 1));
    if (w.axis_v >= w.axis_u) ++w.axis_v;
  }

  auto point = [&](double along_u, double along_v) {
    std::vector<double> c(dimension, 0.0);
    c[w.axis_u] = along_u;
    c[w.axis_v] = along_v;
    return DirectionPoint(std::move(c));
  };
  const auto anchor = point(1.0, 0.0);
  w.first = {anchor, point(-std::cos(epsilon), std::sin(epsilon))};
  w.second = {anchor, point(-std::cos(epsilon), -std::sin(epsilon))};
  w.first_output = aggregate_directions(w.first);
  w.second_output = aggregate_directions(w.second);
  for (std::size_t i = 0; i < w.first.size(); ++i)
    w.input_distance += chordal_distance(w.first[i], w.second[i]);
  w.output_distance = chordal_distance(w.first_output, w.second_output);
  return w;
}

ContinuousAxiomCheck check_continuous_axioms(std::size_t dimension, std::size_t n,
                                             std::size_t trials, std::uint64_t seed) {
  if (dimension < 1 || n < 1) throw Error(ErrorKind::BadSpec, "need dimension >= 1 and n >= 1");
  auto random_direction = [&](Rng& rng) {
    for (;;) {
      std::vector<double> c(dimension);
      for (double& x : c) x = 2.0 * rng.unit() - 1.0;
      if (norm(c) > 1e-3) return DirectionPoint::normalized(std::move(c));
    }
  };

  ContinuousAxiomCheck check;
  check.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_stream(seed, t);
    const auto v = random_direction(rng);
    const std::vector<DirectionPoint> same(n, v);
    if (chordal_distance(aggregate_directions(same), v) <= DirectionPoint::kNormTolerance)
      ++check.unanimity_passes;

    std::vector<DirectionPoint> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(random_direction(rng));
    auto shuffled = points;
    rng.shuffle(std::span<DirectionPoint>(shuffled));
    try {
      if (aggregate_directions(points) == aggregate_directions(shuffled)) ++check.anonymity_passes;
    } catch (const Error&) {
      // A vanishing mean is undefined for both orders alike.
      ++check.anonymity_passes;
    }
  }
  return check;
}

}  // namespace protpref
