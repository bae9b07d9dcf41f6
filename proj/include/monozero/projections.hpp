#pragma once

// Euclidean metric projections onto simple convex sets and the cyclic
// self-map families consumed by the variational-inequality driver.

#include <functional>
#include <string>
#include <vector>

#include "monozero/lp_space.hpp"

namespace monozero {

struct ConvexSetSpec {
  enum class Kind { box, ball, halfspace };
  Kind kind;
  SpaceSpec space;
  // box
  std::vector<double> lo;
  std::vector<double> hi;
  // ball
  PrimalVector center;
  double radius = 0.0;
  // halfspace <a, y> <= c
  std::vector<double> normal;
  double offset = 0.0;
};

ConvexSetSpec make_box(const SpaceSpec& space, std::vector<double> lo,
                       std::vector<double> hi);
ConvexSetSpec make_ball(const SpaceSpec& space, PrimalVector center, double radius);
ConvexSetSpec make_halfspace(const SpaceSpec& space, std::vector<double> normal,
                             double offset);

// Nearest point of the set in the Euclidean norm; identity on members,
// idempotent.
PrimalVector project(const ConvexSetSpec& set, const PrimalVector& x);

bool contains(const ConvexSetSpec& set, const PrimalVector& x, double tol = 0.0);

struct SelfMap {
  std::function<PrimalVector(const PrimalVector&)> apply;
  std::string label;

  PrimalVector operator()(const PrimalVector& x) const { return apply(x); }
};

// An ordered family of self-maps with a declared common fixed point.  The
// witness is validated at construction: every member must fix it.
struct CyclicFamily {
  std::vector<SelfMap> members;
  PrimalVector witness;

  std::size_t size() const { return members.size(); }
};

CyclicFamily make_cyclic_family(const SpaceSpec& space, std::vector<SelfMap> members,
                                PrimalVector witness, double tol = 1e-10);

// Family of metric projections onto the given sets; the witness must lie in
// every set.
CyclicFamily make_projection_family(const std::vector<ConvexSetSpec>& sets,
                                    PrimalVector witness, double tol = 1e-10);

// ((n-1) mod N) + 1: n = 1 selects the first map, wrapping with period N.
std::size_t cyclic_index(long n, std::size_t N);

// max over seeded samples x (Euclidean ball of the given radius) of
// phi_p(u, map(x)) - phi_p(u, x).  Requires u to be a fixed point of map
// within 1e-10.  Quasi-phi_p-nonexpansiveness holds when the result is
// <= 1e-9 * scale.
double check_quasi_phi_nonexpansive(const SpaceSpec& space, const SelfMap& map,
                                    const PrimalVector& u, long samples,
                                    std::uint64_t seed, double radius = 5.0);

}  // namespace monozero
