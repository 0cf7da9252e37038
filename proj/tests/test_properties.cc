// Invariants checked over seeded random instances. Seeds are reported with
// CAPTURE so that a failure can be replayed on its own.
#include <doctest.h>

#include <set>

#include "generators.h"
#include "oracles.h"
#include "topent/cover.h"
#include "topent/entropy.h"
#include "topent/gw.h"
#include "topent/measures.h"

using topent::AtomicMeasure;
using topent::CountMode;
using topent::Nads;
using topent::OpenCover;
using topent::PointId;
using topent::Rational;

namespace {

OpenCover random_cover(gen::Gen& g, std::size_t size) {
  const std::size_t m = 1 + g.index(5);
  std::vector<std::vector<PointId>> elems(m);
  for (auto& e : elems) {
    for (PointId x = 0; x < size; ++x) {
      if (g.index(3) == 0) e.push_back(x);
    }
  }
  for (PointId x = 0; x < size; ++x) elems[g.index(m)].push_back(x);
  return OpenCover(size, elems);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("bowen metric is a metric, monotone in n, and bounded by the base diameter") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(3 + g.index(8), 1 + g.index(4));
      const topent::OrbitTable orbits(sys, 5);
      for (std::size_t n = 1; n <= 5; ++n) {
        for (PointId x = 0; x < sys.size(); ++x) {
          for (PointId y = 0; y < sys.size(); ++y) {
            const Rational d = orbits.bowen_distance(n, x, y);
            CHECK(d == orbits.bowen_distance(n, y, x));
            CHECK(d <= sys.space().diameter());
            if (n > 1) CHECK(d >= orbits.bowen_distance(n - 1, x, y));
            for (PointId z = 0; z < sys.size(); ++z) CHECK(orbits.bowen_distance(n, x, z) <= d + orbits.bowen_distance(n, y, z));
          }
        }
      }
    }
  }

  TEST_CASE("join refines each factor and preimage preserves covering") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(3 + g.index(8), 3);
      const OpenCover a = random_cover(g, sys.size());
      const OpenCover b = random_cover(g, sys.size());
      const std::vector<OpenCover> both = {a, b};
      const OpenCover j = topent::join(both);
      CHECK(j.covers_space());
      for (const auto& e : j.elements()) {
        bool in_a = false;
        for (const auto& f : a.elements()) in_a = in_a || std::includes(f.begin(), f.end(), e.begin(), e.end());
        CHECK(in_a);
      }
      // N is submultiplicative over joins and at least each factor's N.
      const auto na = topent::minimal_subcover_count(a).count;
      const auto nb = topent::minimal_subcover_count(b).count;
      const auto nj = topent::minimal_subcover_count(j).count;
      CHECK(nj <= na * nb);
      CHECK(nj >= std::max(na, nb));
      for (std::size_t t = 0; t < 4; ++t) CHECK(topent::preimage_cover(sys, a, t).covers_space());
    }
  }

  TEST_CASE("product counts bound the base counts") {
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads base = g.system(2 + g.index(4), 2);
      const int k = 2;
      const Nads prod = topent::product_system(base, k);
      const topent::OrbitTable bo(base, 3);
      const topent::OrbitTable po(prod, 3);
      for (std::size_t n = 1; n <= 3; ++n) {
        for (const Rational eps : {Rational(1, 2), Rational(3, 2)}) {
          const auto s = topent::max_separated(bo, n, eps, CountMode::exact).count;
          const auto r = topent::min_spanning(bo, n, eps, CountMode::exact).count;
          CHECK(topent::max_separated(po, n, eps, CountMode::exact).count >= s * s);
          CHECK(topent::min_spanning(po, n, eps, CountMode::exact).count <= r * r);
        }
      }
    }
  }

  TEST_CASE("pushforward chains conserve mass and commute with the orbit table") {
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(2 + g.index(10), 1 + g.index(4));
      const topent::OrbitTable orbits(sys, 6);
      const AtomicMeasure mu = g.measure(sys.size(), 1 + g.index(sys.size()));
      AtomicMeasure cur = mu;
      for (std::size_t j = 1; j < 6; ++j) {
        cur = topent::pushforward(sys, j, cur);
        Rational total;
        for (const auto& [p, w] : cur.atoms()) {
          CHECK(w > Rational());
          total += w;
        }
        CHECK(total == Rational(1));
        CHECK(cur == topent::pushforward_orbit(orbits, j, mu));
      }
    }
  }

  TEST_CASE("weak star distance is a pseudometric") {
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const auto space = std::make_shared<const topent::FiniteSpace>(topent::build_random_space(2 + g.index(6), g.bits()));
      const auto fam = topent::default_family(space);
      std::vector<AtomicMeasure> ms;
      for (int i = 0; i < 5; ++i) ms.push_back(g.measure(space->size(), 1 + g.index(space->size())));
      for (const auto& a : ms) {
        CHECK(topent::weak_star_distance(a, a, fam, 10).value == Rational());
        for (const auto& b : ms) {
          const Rational ab = topent::weak_star_distance(a, b, fam, 10).value;
          CHECK(ab >= Rational());
          CHECK(ab <= Rational(2));
          for (const auto& c : ms) {
            CHECK(topent::weak_star_distance(a, c, fam, 10).value <= ab + topent::weak_star_distance(b, c, fam, 10).value);
          }
        }
      }
    }
  }

  TEST_CASE("embedding is injective and equivariant on random small systems") {
    for (std::uint64_t seed = 500; seed < 506; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(2 + g.index(4), 2);
      for (int k = 1; k <= 3; ++k) {
        CHECK_FALSE(topent::check_embedding_equivariance(sys, k, 4).has_value());
        const auto r = topent::check_embedding_injective(sys.space(), k, topent::default_family(sys.space_ptr()), 20);
        CHECK(r.injective);
      }
    }
  }

  TEST_CASE("partition cells are disjoint, nonempty, cover, and sit inside their parents") {
    for (std::uint64_t seed = 600; seed < 660; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const std::size_t size = 2 + g.index(12);
      const OpenCover c = random_cover(g, size);
      const auto sub = topent::minimal_subcover_count(c);
      std::vector<std::vector<PointId>> chosen;
      for (auto i : sub.chosen) chosen.push_back(c[i]);
      const topent::CoverPartition part = topent::partition_from_cover(OpenCover(size, chosen));
      std::vector<int> seen(size, 0);
      for (std::size_t k = 0; k < part.size(); ++k) {
        CHECK(!part.cells[k].empty());
        CHECK(std::includes(part.parents[k].begin(), part.parents[k].end(), part.cells[k].begin(), part.cells[k].end()));
        CHECK(part.cell_of[part.representatives[k]] == k);
        for (PointId x : part.cells[k]) ++seen[x];
      }
      for (int s : seen) CHECK(s == 1);
    }
  }

  TEST_CASE("phi has operator norm at most one") {
    for (std::uint64_t seed = 700; seed < 720; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(3 + g.index(8), 3);
      const auto fam = topent::default_family(sys.space_ptr());
      const auto part = topent::partition_from_cover(topent::ball_partition(sys.space(), Rational(2)));
      const topent::OrbitTable orbits(sys, 4);
      const topent::PhiMap map(part, fam, 4, orbits);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> x(part.size());
        Rational l1;
        for (auto& v : x) {
          v = g.rational(3, 4) / Rational(static_cast<std::int64_t>(part.size()) * 3);
          l1 += topent::abs(v);
        }
        CHECK(map(x).sup_norm() <= l1);
      }
    }
  }

  TEST_CASE("I1 bound holds for random measures on fine partitions") {
    const Rational eps(1, 2);
    for (std::uint64_t seed = 800; seed < 806; ++seed) {
      CAPTURE(seed);
      gen::Gen g(seed);
      const Nads sys = g.system(4 + g.index(6), 2);
      const auto fam = topent::default_family(sys.space_ptr());
      const std::size_t K0 = topent::k0_for_eps(eps);
      const std::size_t N = 2;
      const auto delta = topent::choose_delta(sys.space(), fam, K0, eps);
      const auto part = topent::partition_from_cover(
          topent::iterated_join(sys, topent::ball_partition(sys.space(), delta.delta / Rational(2)), N));
      const topent::OrbitTable orbits(sys, N);
      for (int trial = 0; trial < 5; ++trial) {
        const AtomicMeasure mu = g.measure(sys.size(), 1 + g.index(sys.size()));
        const auto w = topent::psi(mu, part);
        for (std::size_t n = 1; n <= K0; ++n) {
          for (std::size_t j = 0; j < N; ++j) {
            const Rational exact = topent::integrate([&](PointId x) { return fam(n, orbits.at(j, x)); }, mu);
            Rational approx;
            for (std::size_t k = 0; k < part.size(); ++k) approx += w[k] * fam(n, orbits.at(j, part.representatives[k]));
            CHECK(topent::abs(exact - approx) <= eps / Rational(9));
          }
        }
      }
    }
  }
}
