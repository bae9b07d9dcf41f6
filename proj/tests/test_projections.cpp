#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "monozero/geometry.hpp"
#include "monozero/projections.hpp"
#include "monozero/rng.hpp"

using namespace monozero;

namespace {

SpaceSpec hilbert2() { return SpaceSpec(2, 2.0, 2.0); }

}  // namespace

TEST_CASE("projection pinned values") {
  SpaceSpec space = hilbert2();
  ConvexSetSpec box = make_box(space, {0.0, 0.0}, {1.0, 1.0});
  PrimalVector pb = project(box, PrimalVector{2.0, 2.0});
  CHECK(pb[0] == doctest::Approx(1.0));
  CHECK(pb[1] == doctest::Approx(1.0));

  ConvexSetSpec ball = make_ball(space, PrimalVector{0.0, 0.0}, 1.0);
  PrimalVector pc = project(ball, PrimalVector{2.0, 0.0});
  CHECK(pc[0] == doctest::Approx(1.0));
  CHECK(pc[1] == doctest::Approx(0.0));

  ConvexSetSpec half = make_halfspace(space, {1.0, 0.0}, 0.0);
  PrimalVector ph = project(half, PrimalVector{1.0, 1.0});
  CHECK(ph[0] == doctest::Approx(0.0));
  CHECK(ph[1] == doctest::Approx(1.0));

  // interior points are fixed
  PrimalVector inside{0.25, 0.75};
  PrimalVector same = project(box, inside);
  CHECK(same[0] == inside[0]);
  CHECK(same[1] == inside[1]);
  CHECK(contains(box, inside, 1e-12));
  CHECK(!contains(box, PrimalVector{2.0, 0.5}, 1e-12));
}

TEST_CASE("set constructors validate") {
  SpaceSpec space = hilbert2();
  CHECK_THROWS_AS(make_box(space, {1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_ball(space, PrimalVector{0.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_halfspace(space, {0.0, 0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_box(space, {0.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("projection idempotence optimality and nonexpansiveness") {
  SpaceSpec space = hilbert2();
  Rng rng(21u);
  ConvexSetSpec sets[] = {
      make_box(space, {-1.0, 0.0}, {2.0, 1.0}),
      make_ball(space, PrimalVector{0.5, -0.5}, 2.0),
      make_halfspace(space, {1.0, 2.0}, 1.0),
  };
  for (const ConvexSetSpec& set : sets) {
    for (int rep = 0; rep < 500; ++rep) {
      PrimalVector x = sample_ball(rng, 2, 6.0);
      PrimalVector px = project(set, x);
      PrimalVector ppx = project(set, px);
      CHECK(norm(space, ppx - px) <= 1e-12);

      // variational characterization: <x - Px, y - Px> <= 0 for y in the set
      PrimalVector y = project(set, sample_ball(rng, 2, 6.0));
      DualCovector gap((x - px).coords);
      CHECK(pair(gap, y - px) <= 1e-9);

      PrimalVector x2 = sample_ball(rng, 2, 6.0);
      CHECK(norm(space, project(set, x) - project(set, x2)) <=
            norm(space, x - x2) + 1e-12);
    }
  }
}

TEST_CASE("cyclic index") {
  CHECK(cyclic_index(1, 3) == 1);
  CHECK(cyclic_index(3, 3) == 3);
  CHECK(cyclic_index(4, 3) == 1);
  // periodic with period N, surjective over any N consecutive integers
  for (int N : {1, 2, 5}) {
    for (long n = 1; n <= 20; ++n) {
      CHECK(cyclic_index(n, N) == cyclic_index(n + N, N));
      CHECK(cyclic_index(n, N) >= 1);
      CHECK(cyclic_index(n, N) <= N);
    }
    std::vector<bool> seen(static_cast<std::size_t>(N), false);
    for (long n = 7; n < 7 + N; ++n) {
      seen[static_cast<std::size_t>(cyclic_index(n, N) - 1)] = true;
    }
    for (bool b : seen) CHECK(b);
  }
  CHECK_THROWS_AS(cyclic_index(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(cyclic_index(5, 0), std::invalid_argument);
}

TEST_CASE("cyclic family construction") {
  SpaceSpec space = hilbert2();
  std::vector<ConvexSetSpec> sets = {
      make_ball(space, PrimalVector{0.0, 0.0}, 1.0),
      make_halfspace(space, {1.0, 0.0}, 0.5),
  };
  CyclicFamily family = make_projection_family(sets, PrimalVector{0.0, 0.0});
  CHECK(family.members.size() == 2);
  PrimalVector w = family.members[0](PrimalVector{3.0, 0.0});
  CHECK(w[0] == doctest::Approx(1.0));

  // witness outside one of the sets is rejected, naming the offender
  try {
    make_projection_family(sets, PrimalVector{0.9, 0.0});
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
  }
  CHECK_THROWS_AS(make_projection_family({}, PrimalVector{0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("quasi nonexpansiveness check") {
  SpaceSpec space = hilbert2();
  SelfMap identity{[](const PrimalVector& x) { return x; }, "identity"};
  CHECK(check_quasi_phi_nonexpansive(space, identity, PrimalVector{0.3, -0.7}, 100, 1u) ==
        doctest::Approx(0.0));

  ConvexSetSpec box = make_box(space, {0.0, 0.0}, {1.0, 1.0});
  SelfMap proj{[box](const PrimalVector& x) { return project(box, x); }, "project"};
  const double worst =
      check_quasi_phi_nonexpansive(space, proj, PrimalVector{0.5, 0.5}, 10000, 2u);
  CHECK(worst <= 1e-9);

  SelfMap doubling{[](const PrimalVector& x) { return 2.0 * x; }, "double"};
  CHECK(check_quasi_phi_nonexpansive(space, doubling, PrimalVector{0.0, 0.0}, 1000, 3u) >
        0.0);

  // the claimed fixed point really must be fixed
  CHECK_THROWS_AS(
      check_quasi_phi_nonexpansive(space, doubling, PrimalVector{1.0, 0.0}, 10, 4u),
      std::invalid_argument);
}
