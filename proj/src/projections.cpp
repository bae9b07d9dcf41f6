#include "monozero/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monozero/geometry.hpp"
#include "monozero/rng.hpp"

namespace monozero {

namespace {

double euclid_dist(const PrimalVector& a, const PrimalVector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

ConvexSetSpec make_box(const SpaceSpec& space, std::vector<double> lo,
                       std::vector<double> hi) {
  const std::size_t n = static_cast<std::size_t>(space.n);
  if (lo.size() != n || hi.size() != n) {
    throw std::invalid_argument("make_box: bound dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lo[i] <= hi[i])) {
      throw std::invalid_argument("make_box: requires lo <= hi componentwise");
    }
  }
  ConvexSetSpec set{ConvexSetSpec::Kind::box, space, std::move(lo), std::move(hi),
                    PrimalVector{}, 0.0, {}, 0.0};
  return set;
}

ConvexSetSpec make_ball(const SpaceSpec& space, PrimalVector center, double radius) {
  if (center.size() != static_cast<std::size_t>(space.n)) {
    throw std::invalid_argument("make_ball: center dimension mismatch");
  }
  if (!(radius > 0.0)) {
    throw std::invalid_argument("make_ball: radius must be > 0");
  }
  ConvexSetSpec set{ConvexSetSpec::Kind::ball, space, {}, {}, std::move(center),
                    radius, {}, 0.0};
  return set;
}

ConvexSetSpec make_halfspace(const SpaceSpec& space, std::vector<double> normal,
                             double offset) {
  if (normal.size() != static_cast<std::size_t>(space.n)) {
    throw std::invalid_argument("make_halfspace: normal dimension mismatch");
  }
  double nrm = 0.0;
  for (double t : normal) nrm += t * t;
  if (nrm == 0.0) {
    throw std::invalid_argument("make_halfspace: normal must be nonzero");
  }
  ConvexSetSpec set{ConvexSetSpec::Kind::halfspace, space, {}, {}, PrimalVector{},
                    0.0, std::move(normal), offset};
  return set;
}

PrimalVector project(const ConvexSetSpec& set, const PrimalVector& x) {
  if (x.size() != static_cast<std::size_t>(set.space.n)) {
    throw std::invalid_argument("project: dimension mismatch");
  }
  switch (set.kind) {
    case ConvexSetSpec::Kind::box: {
      PrimalVector r = x;
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = std::min(std::max(r[i], set.lo[i]), set.hi[i]);
      }
      return r;
    }
    case ConvexSetSpec::Kind::ball: {
      const double d = euclid_dist(x, set.center);
      if (d <= set.radius) return x;
      PrimalVector r(x.size());
      const double scale = set.radius / d;
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = set.center[i] + scale * (x[i] - set.center[i]);
      }
      return r;
    }
    case ConvexSetSpec::Kind::halfspace: {
      double dot = 0.0, nn = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        dot += set.normal[i] * x[i];
        nn += set.normal[i] * set.normal[i];
      }
      const double excess = dot - set.offset;
      if (excess <= 0.0) return x;
      PrimalVector r = x;
      const double scale = excess / nn;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= scale * set.normal[i];
      return r;
    }
  }
  throw std::logic_error("project: unreachable");
}

bool contains(const ConvexSetSpec& set, const PrimalVector& x, double tol) {
  const PrimalVector px = project(set, x);
  return euclid_dist(px, x) <= tol;
}

CyclicFamily make_cyclic_family(const SpaceSpec& space, std::vector<SelfMap> members,
                                PrimalVector witness, double tol) {
  if (members.empty()) {
    throw std::invalid_argument("make_cyclic_family: at least one map required");
  }
  if (witness.size() != static_cast<std::size_t>(space.n)) {
    throw std::invalid_argument("make_cyclic_family: witness dimension mismatch");
  }
  for (const auto& m : members) {
    const PrimalVector w = m(witness);
    if (norm(space, w - witness) > tol) {
      throw std::invalid_argument("make_cyclic_family: witness is not fixed by map '" +
                                  m.label + "'");
    }
  }
  return CyclicFamily{std::move(members), std::move(witness)};
}

CyclicFamily make_projection_family(const std::vector<ConvexSetSpec>& sets,
                                    PrimalVector witness, double tol) {
  if (sets.empty()) {
    throw std::invalid_argument("make_projection_family: at least one set required");
  }
  std::vector<SelfMap> members;
  members.reserve(sets.size());
  for (const auto& set : sets) {
    members.push_back(SelfMap{[set](const PrimalVector& x) { return project(set, x); },
                              "project"});
  }
  return make_cyclic_family(sets.front().space, std::move(members),
                            std::move(witness), tol);
}

std::size_t cyclic_index(long n, std::size_t N) {
  if (n < 1) throw std::invalid_argument("cyclic_index: n must be >= 1");
  if (N < 1) throw std::invalid_argument("cyclic_index: N must be >= 1");
  return static_cast<std::size_t>((n - 1) % static_cast<long>(N)) + 1;
}

double check_quasi_phi_nonexpansive(const SpaceSpec& space, const SelfMap& map,
                                    const PrimalVector& u, long samples,
                                    std::uint64_t seed, double radius) {
  const PrimalVector mu = map(u);
  if (norm(space, mu - u) > 1e-10) {
    throw std::invalid_argument(
        "check_quasi_phi_nonexpansive: u is not a fixed point of the map");
  }
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (long k = 0; k < samples; ++k) {
    const PrimalVector x = sample_ball(rng, space.n, radius);
    const double residual = phi_p(space, u, map(x)) - phi_p(space, u, x);
    worst = std::max(worst, residual);
  }
  return worst;
}

}  // namespace monozero
