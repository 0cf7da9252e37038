#include <doctest.h>

#include <cmath>
#include <set>

#include "generators.h"
#include "oracles.h"
#include "topent/clique.h"
#include "topent/cover.h"
#include "topent/entropy.h"
#include "topent/error.h"
#include "topent/set_cover.h"

using topent::CountMode;
using topent::Nads;
using topent::OpenCover;
using topent::PointId;
using topent::Rational;

namespace {

std::set<std::vector<PointId>> as_set(const OpenCover& c) {
  return {c.elements().begin(), c.elements().end()};
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("join") {
    const OpenCover a(4, {{0, 1}, {2, 3}});
    const OpenCover b(4, {{0, 2}, {1, 3}});
    const std::vector<OpenCover> one = {a};
    CHECK(as_set(topent::join(one)) == as_set(a));
    const std::vector<OpenCover> with_trivial = {a, OpenCover::trivial(4)};
    CHECK(as_set(topent::join(with_trivial)) == as_set(a));
    const std::vector<OpenCover> both = {a, b};
    const OpenCover j = topent::join(both);
    CHECK(j.size() == 4);
    CHECK(j.is_partition());
    // Disjoint cells drop the empty intersections.
    const OpenCover c(4, {{0, 1}, {2, 3}});
    const std::vector<OpenCover> same = {a, c};
    CHECK(topent::join(same).size() == 2);
  }

  TEST_CASE("minimal subcover count") {
    const OpenCover part(5, {{0}, {1, 2}, {3, 4}});
    auto r = topent::minimal_subcover_count(part);
    CHECK(r.count == 3);
    CHECK(r.exact);
    const OpenCover xa(4, {{0, 1, 2, 3}, {1, 2}});
    CHECK(topent::minimal_subcover_count(xa).count == 1);
    const OpenCover missing(3, {{0}, {1}});
    CHECK_THROWS_AS(topent::minimal_subcover_count(missing), topent::NotACover);
  }

  TEST_CASE("subcover count matches enumeration") {
    gen::Gen g(21);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t size = 3 + g.index(8);
      const std::size_t m = 2 + g.index(9);
      std::vector<std::vector<PointId>> elems(m);
      for (auto& e : elems) {
        for (PointId x = 0; x < size; ++x) {
          if (g.index(3) == 0) e.push_back(x);
        }
      }
      for (PointId x = 0; x < size; ++x) elems[g.index(m)].push_back(x);
      const OpenCover c(size, elems);
      const auto r = topent::minimal_subcover_count(c);
      CAPTURE(trial);
      CHECK(r.exact);
      CHECK(r.count == oracle::subcover(c));
      std::set<PointId> hit;
      for (std::size_t i : r.chosen) hit.insert(c[i].begin(), c[i].end());
      CHECK(hit.size() == size);
    }
  }

  TEST_CASE("preimage cover") {
    gen::Gen g(2);
    const Nads sys = g.system(7, 3);
    const OpenCover u(7, {{0, 1, 2}, {3, 4}, {5, 6}});
    CHECK(as_set(topent::preimage_cover(sys, u, 0)) == as_set(u));
    for (std::size_t j = 0; j <= 5; ++j) {
      const OpenCover p = topent::preimage_cover(sys, u, j);
      CHECK(p.covers_space());
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (PointId x : p[i]) {
          const PointId y = oracle::iterate(sys, j, x);
          bool in_some = false;
          for (std::size_t e = 0; e < u.size(); ++e) {
            in_some = in_some || std::binary_search(u[e].begin(), u[e].end(), y);
          }
          CHECK(in_some);
        }
      }
    }
    const Nads id = topent::identity_system(sys.space_ptr());
    for (std::size_t j = 0; j <= 4; ++j) CHECK(as_set(topent::preimage_cover(id, u, j)) == as_set(u));
  }

  TEST_CASE("first-symbol cover preimages on the example") {
    const Nads sys = topent::example_x_system(8, 8);
    const auto& layout = *sys.space().symbolic();
    const OpenCover u = topent::example_first_symbol_cover(layout);
    CHECK(u.size() == 2);
    CHECK(u.is_partition());
    for (std::size_t m = 1; m <= 6; ++m) {
      const OpenCover p = topent::preimage_cover(sys, u, m);
      for (PointId x = 0; x < sys.size(); ++x) {
        // Membership in U_1^m is decided by the symbol f_1^m reads first.
        const topent::SpacePoint pt = layout.point(x);
        int symbol = 0;
        if (pt.kind == topent::SpacePoint::Kind::limit_one) symbol = 1;
        if (pt.kind == topent::SpacePoint::Kind::interior) {
          const int shifts = std::max(0, static_cast<int>(m) - pt.level);
          symbol = pt.word.at(shifts);
        }
        const auto& cell = p[symbol == 0 ? 0 : 1];
        CHECK(std::binary_search(cell.begin(), cell.end(), x));
      }
    }
  }

  TEST_CASE("iterated join counts itineraries") {
    gen::Gen g(31);
    for (int trial = 0; trial < 20; ++trial) {
      const Nads sys = g.system(6 + g.index(6), 3);
      std::vector<std::uint32_t> labels(sys.size());
      std::vector<int> ilabels(sys.size());
      for (PointId x = 0; x < sys.size(); ++x) ilabels[x] = static_cast<int>(labels[x] = g.index(3));
      const OpenCover u = OpenCover::from_labels(labels);
      for (std::size_t n = 1; n <= 4; ++n) {
        const OpenCover j = topent::iterated_join(sys, u, n);
        CHECK(j.is_partition());
        CHECK(topent::minimal_subcover_count(j).count == oracle::itineraries(sys, ilabels, n));
      }
    }
  }
}

TEST_SUITE("entropy") {
  TEST_CASE("separated and spanning limits in eps") {
    gen::Gen g(41);
    const Nads sys = g.system(9, 3);
    const topent::OrbitTable orbits(sys, 3);
    Rational diam;
    Rational minpos(1000);
    for (PointId x = 0; x < 9; ++x) {
      for (PointId y = 0; y < 9; ++y) {
        const Rational d = orbits.bowen_distance(3, x, y);
        diam = topent::max(diam, d);
        if (d > Rational() && d < minpos) minpos = d;
      }
    }
    CHECK(topent::max_separated(orbits, 3, diam, CountMode::exact).count == 1);
    CHECK(topent::max_separated(orbits, 3, minpos / Rational(2), CountMode::exact).count == 9);
    CHECK(topent::min_spanning(orbits, 3, diam + Rational(1), CountMode::exact).count == 1);
    CHECK(topent::min_spanning(orbits, 3, minpos, CountMode::exact).count == 9);
  }

  TEST_CASE("exact counts match enumeration") {
    gen::Gen g(51);
    for (int trial = 0; trial < 40; ++trial) {
      const Nads sys = g.system(4 + g.index(8), 3);
      const topent::OrbitTable orbits(sys, 3);
      for (std::size_t n = 1; n <= 3; ++n) {
        for (const Rational eps : {Rational(1, 2), Rational(1), Rational(2), Rational(3)}) {
          CAPTURE(trial);
          CAPTURE(n);
          CAPTURE(eps.str());
          const auto s = topent::max_separated(orbits, n, eps, CountMode::exact);
          const auto r = topent::min_spanning(orbits, n, eps, CountMode::exact);
          CHECK(s.exact);
          CHECK(r.exact);
          CHECK(s.count == oracle::separated(sys, n, eps));
          CHECK(r.count == oracle::spanning(sys, n, eps));
          CHECK(s.witness.size() == s.count);
          for (PointId a : s.witness) {
            for (PointId b : s.witness) {
              if (a != b) CHECK(orbits.bowen_distance(n, a, b) > eps);
            }
          }
          const auto sg = topent::max_separated(orbits, n, eps, CountMode::greedy);
          const auto rg = topent::min_spanning(orbits, n, eps, CountMode::greedy);
          CHECK(sg.count <= s.count);
          CHECK(rg.count >= r.count);
        }
      }
    }
  }

  TEST_CASE("monotone in eps and n") {
    gen::Gen g(61);
    const Nads sys = g.system(10, 4);
    const topent::OrbitTable orbits(sys, 5);
    for (std::size_t n = 1; n <= 5; ++n) {
      std::uint64_t prev_s = ~0ULL;
      std::uint64_t prev_r = ~0ULL;
      for (int e = 1; e <= 6; ++e) {
        const Rational eps(e, 2);
        const auto s = topent::max_separated(orbits, n, eps, CountMode::exact).count;
        const auto r = topent::min_spanning(orbits, n, eps, CountMode::exact).count;
        CHECK(s <= prev_s);
        CHECK(r <= prev_r);
        prev_s = s;
        prev_r = r;
        if (n > 1) {
          CHECK(s >= topent::max_separated(orbits, n - 1, eps, CountMode::exact).count);
          CHECK(r >= topent::min_spanning(orbits, n - 1, eps, CountMode::exact).count);
        }
      }
    }
  }

  TEST_CASE("sandwich holds away from ties") {
    gen::Gen g(71);
    for (int trial = 0; trial < 40; ++trial) {
      const Nads sys = g.system(4 + g.index(7), 3);
      const topent::OrbitTable orbits(sys, 3);
      for (std::size_t n = 1; n <= 3; ++n) {
        // Half-integer eps never equals an integer distance.
        for (const Rational eps : {Rational(3, 2), Rational(5, 2)}) {
          const auto s = topent::max_separated(orbits, n, eps, CountMode::exact).count;
          CHECK(topent::min_spanning(orbits, n, eps, CountMode::exact).count <= s);
          CHECK(s <= topent::min_spanning(orbits, n, eps / Rational(2), CountMode::exact).count);
        }
      }
    }
  }

  TEST_CASE("sandwich lower half fails on a distance tie") {
    // Two points at distance exactly eps: no strict ball reaches across and
    // no pair is strictly separated, so r = 2 > s = 1.
    const auto space = std::make_shared<const topent::FiniteSpace>(
        topent::build_finite_space({"a", "b"}, std::vector<Rational>{0, 1, 1, 0}));
    const Nads sys = topent::identity_system(space);
    CHECK(topent::max_separated(sys, 1, Rational(1), CountMode::exact).count == 1);
    CHECK(topent::min_spanning(sys, 1, Rational(1), CountMode::exact).count == 2);
  }

  TEST_CASE("exact mode respects its cap") {
    const Nads sys = topent::full_shift_constant(8);
    topent::EntropyCaps caps;
    caps.separated = 16;
    CHECK_THROWS_AS(topent::max_separated(sys, 2, Rational(1, 4), CountMode::exact, caps), topent::SizeCapExceeded);
    const auto greedy = topent::max_separated(sys, 2, Rational(1, 4), CountMode::greedy, caps);
    CHECK_FALSE(greedy.exact);
    CHECK(greedy.count >= 1);
  }

  TEST_CASE("greedy separated extends its seed") {
    const Nads sys = topent::full_shift_constant(6);
    const topent::OrbitTable orbits(sys, 3);
    const std::vector<PointId> seed = {5};
    const auto r = topent::max_separated(orbits, 3, Rational(1, 4), CountMode::greedy, {}, seed);
    CHECK(std::find(r.witness.begin(), r.witness.end(), PointId{5}) != r.witness.end());
  }

  TEST_CASE("full shift counts") {
    // Separation at 1/4 over n steps distinguishes the first n + 1 symbols.
    const Nads sys = topent::full_shift_constant(8);
    const topent::OrbitTable orbits(sys, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto s = topent::max_separated(orbits, n, Rational(1, 4), CountMode::greedy);
      CHECK(s.count == (std::uint64_t{1} << (n + 1)));
    }
  }

  TEST_CASE("growth table slopes") {
    const std::vector<std::size_t> h = {1, 2, 3, 4, 5, 6};
    const auto flat = topent::growth_table(h, [](std::size_t) { return topent::GrowthSample{7, true}; });
    CHECK(flat.slope_fit == doctest::Approx(0.0));
    CHECK(flat.slope_tail == doctest::Approx(0.0));
    const auto doubling =
        topent::growth_table(h, [](std::size_t n) { return topent::GrowthSample{std::uint64_t{1} << n, true}; });
    CHECK(doubling.slope_fit == doctest::Approx(std::log(2.0)));
    CHECK(doubling.slope_tail == doctest::Approx(std::log(2.0)));
    CHECK(doubling.rows[2].log_count == doctest::Approx(3 * std::log(2.0)));
    CHECK(doubling.to_csv().find("n,") == 0);
  }

  TEST_CASE("example X: exact separated counts at eps 1/2") {
    // L = N_lev = 8, exact maximum clique with the cap lifted to the whole space.
    const Nads sys = topent::example_x_system(8, 8);
    const topent::OrbitTable orbits(sys, 6);
    topent::EntropyCaps caps;
    caps.separated = 4096;
    const std::vector<std::uint64_t> expect = {6, 6, 6, 12, 24, 48};
    for (std::size_t m = 1; m <= 6; ++m) {
      CAPTURE(m);
      const auto s = topent::max_separated(orbits, m, Rational(1, 2), CountMode::exact, caps);
      CHECK(s.exact);
      CHECK(s.count == expect[m - 1]);
      CHECK(s.count >= topent::max_separated(orbits, m, Rational(1, 2), CountMode::greedy).count);
    }
  }

  // The stated bound s_m(1/2) >= 2^m. With f_1 the identity the orbit makes
  // only m - 1 shifts, and the exact counts above fall short from m = 3.
  TEST_CASE("example X: separated count at eps 1/2 is at least 2^m" * doctest::should_fail()) {
    const Nads sys = topent::example_x_system(8, 8);
    const topent::OrbitTable orbits(sys, 6);
    topent::EntropyCaps caps;
    caps.separated = 4096;
    for (std::size_t m = 1; m <= 6; ++m) {
      CAPTURE(m);
      CHECK(topent::max_separated(orbits, m, Rational(1, 2), CountMode::exact, caps).count >=
            (std::uint64_t{1} << m));
    }
  }
}

TEST_SUITE("solvers") {
  TEST_CASE("maximum clique matches enumeration") {
    gen::Gen g(81);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + g.index(16);
      topent::DenseGraph graph(n);
      std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
      const std::size_t density = 1 + g.index(4);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (g.index(5) < density) {
            graph.add_edge(a, b);
            adj[a][b] = adj[b][a] = true;
          }
        }
      }
      const auto r = topent::maximum_clique(graph);
      CHECK(r.exact);
      CHECK(r.vertices.size() == oracle::clique(adj));
      for (std::size_t a : r.vertices) {
        for (std::size_t b : r.vertices) {
          if (a != b) CHECK(graph.adjacent(a, b));
        }
      }
      CHECK(topent::greedy_clique(graph).size() <= r.vertices.size());
    }
  }

  TEST_CASE("set cover matches enumeration") {
    gen::Gen g(91);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t universe = 2 + g.index(10);
      const std::size_t m = 1 + g.index(10);
      std::vector<std::vector<std::uint32_t>> sets(m);
      std::vector<std::vector<PointId>> elems(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::uint32_t x = 0; x < universe; ++x) {
          if (g.index(3) == 0) sets[i].push_back(x);
        }
      }
      for (std::uint32_t x = 0; x < universe; ++x) {
        auto& s = sets[g.index(m)];
        if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
      }
      for (std::size_t i = 0; i < m; ++i) {
        std::sort(sets[i].begin(), sets[i].end());
        elems[i].assign(sets[i].begin(), sets[i].end());
      }
      const auto r = topent::solve_set_cover(universe, sets);
      CHECK(r.exact);
      CHECK(r.size == oracle::subcover(OpenCover(universe, elems)));
      CHECK(topent::set_cover_dual_bound(universe, sets) <= r.size);
      CHECK(topent::greedy_set_cover(universe, sets).size() >= r.size);
    }
  }
}
