#include <doctest.h>

#include "generators.h"
#include "oracles.h"
#include "topent/dynamics.h"
#include "topent/error.h"

using topent::Nads;
using topent::PointId;
using topent::Rational;
using topent::SymbolicLayout;
using topent::Word;

TEST_SUITE("nads") {
  TEST_CASE("compose order and identity") {
    gen::Gen g(3);
    const Nads sys = g.system(6, 3);
    for (PointId x = 0; x < 6; ++x) {
      for (std::size_t i = 1; i <= 4; ++i) CHECK(topent::compose(sys, i, 0, x) == x);
      CHECK(topent::compose(sys, 1, 2, x) == sys.apply(2, sys.apply(1, x)));
    }
  }

  TEST_CASE("cocycle identity") {
    gen::Gen g(5);
    const Nads sys = g.system(7, 3);
    for (std::size_t i = 1; i <= 4; ++i) {
      for (std::size_t n = 0; n <= 8; ++n) {
        for (std::size_t m = 0; n + m <= 8; ++m) {
          for (PointId x = 0; x < 7; ++x) {
            REQUIRE(topent::compose(sys, i, n + m, x) ==
                    topent::compose(sys, i + n, m, topent::compose(sys, i, n, x)));
          }
        }
      }
    }
  }

  TEST_CASE("example map rule") {
    const Nads sys = topent::example_x_system(6, 6);
    const SymbolicLayout& layout = *sys.space().symbolic();
    const Word a = Word::from_string("011010");
    const PointId x1 = layout.interior(a, 1);
    CHECK(topent::example_f(layout, 3, x1) == layout.interior(a.shifted(), 2));
    const PointId x5 = layout.interior(a, 5);
    CHECK(topent::example_f(layout, 2, x5) == x5);
    CHECK(topent::example_f(layout, 7, layout.limit_zero()) == layout.limit_zero());
    CHECK(topent::example_f(layout, 7, *layout.limit_one()) == *layout.limit_one());
    // f_1 has no level below 1 to act on.
    CHECK(sys.apply(1, x1) == x1);
    // f_1, f_2, f_3 from level 1: identity, then two shifts.
    CHECK(topent::compose(sys, 1, 3, x1) == layout.interior(a.shifted().shifted(), 3));
    CHECK_THROWS_AS(topent::example_f(layout, 9, layout.interior(a, 6)), topent::TruncationExceeded);
  }

  TEST_CASE("example map fixes every level >= n") {
    const Nads sys = topent::example_x_system(4, 5);
    const SymbolicLayout& layout = *sys.space().symbolic();
    for (std::size_t n = 1; n <= 5; ++n) {
      for (PointId x = 0; x < sys.size(); ++x) {
        if (layout.point(x).level >= static_cast<int>(n) || layout.point(x).level == 0) {
          CHECK(sys.apply(n, x) == x);
        }
      }
    }
  }

  TEST_CASE("example g agrees with f on Y-shaped points") {
    const Nads y = topent::example_y_system(4, 4);
    const SymbolicLayout& yl = *y.space().symbolic();
    const Word a = Word::from_string("1011");
    CHECK(y.apply(3, yl.interior(a, 1)) == yl.interior(a.shifted(), 2));
    CHECK(y.apply(2, yl.interior(a, 3)) == yl.interior(a, 3));
    CHECK(y.apply(5, yl.limit_zero()) == yl.limit_zero());
  }

  TEST_CASE("bowen distance") {
    gen::Gen g(8);
    const Nads sys = g.system(9, 3);
    const topent::OrbitTable orbits(sys, 8);
    for (PointId x = 0; x < 9; ++x) {
      for (PointId y = 0; y < 9; ++y) {
        CHECK(orbits.bowen_distance(1, x, y) == sys.space().distance(x, y));
        Rational previous;
        for (std::size_t n = 1; n <= 8; ++n) {
          const Rational d = orbits.bowen_distance(n, x, y);
          CHECK(d == oracle::bowen(sys, n, x, y));
          CHECK(d >= previous);
          previous = d;
        }
      }
      CHECK(orbits.bowen_distance(8, x, x) == Rational());
    }
  }

  TEST_CASE("bowen distance is a metric for every n") {
    gen::Gen g(9);
    const Nads sys = g.system(8, 2);
    const topent::OrbitTable orbits(sys, 5);
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK_NOTHROW(
          topent::validate_metric(8, [&](PointId x, PointId y) { return orbits.bowen_distance(n, x, y); }));
    }
  }

  TEST_CASE("product system") {
    gen::Gen g(12);
    const Nads base = g.system(4, 2);
    const Nads p1 = topent::product_system(base, 1);
    for (PointId x = 0; x < 4; ++x) {
      for (PointId y = 0; y < 4; ++y) CHECK(p1.space().distance(x, y) == base.space().distance(x, y));
    }
    for (int k = 2; k <= 3; ++k) {
      const Nads pk = topent::product_system(base, k);
      const topent::TupleLayout layout(4, k);
      const topent::OrbitTable po(pk, 4);
      const topent::OrbitTable bo(base, 4);
      for (PointId a = 0; a < pk.size(); ++a) {
        for (PointId b = 0; b < pk.size(); ++b) {
          for (std::size_t n = 1; n <= 4; ++n) {
            Rational expect;
            for (int i = 0; i < k; ++i) {
              expect = topent::max(expect, bo.bowen_distance(n, layout.coordinate(a, i), layout.coordinate(b, i)));
            }
            REQUIRE(po.bowen_distance(n, a, b) == expect);
          }
        }
      }
      for (PointId x = 0; x < 4; ++x) {
        for (PointId y = 0; y < 4; ++y) {
          const std::vector<PointId> xx(static_cast<std::size_t>(k), x);
          const std::vector<PointId> yy(static_cast<std::size_t>(k), y);
          CHECK(pk.space().distance(layout.encode(xx), layout.encode(yy)) == base.space().distance(x, y));
        }
      }
    }
    CHECK_THROWS_AS(topent::product_system(base, 9), topent::SizeCapExceeded);
  }

  TEST_CASE("tuple layout") {
    const topent::TupleLayout layout(5, 3);
    CHECK(layout.size() == 125);
    for (PointId id = 0; id < layout.size(); ++id) CHECK(layout.encode(layout.decode(id)) == id);
    const std::vector<PointId> t = {1, 2, 3};
    CHECK(layout.coordinate(layout.encode(t), 0) == 1);
    CHECK(layout.coordinate(layout.encode(t), 2) == 3);
  }

  TEST_CASE("example factor map") {
    const auto fm = topent::example_factor_map(6, 6);
    const SymbolicLayout& xl = *fm.domain.space().symbolic();
    const SymbolicLayout& yl = *fm.codomain.space().symbolic();
    CHECK(fm.map(*xl.limit_one()) == yl.limit_zero());
    CHECK(fm.map(xl.limit_zero()) == yl.limit_zero());
    const Word a = Word::from_string("100110");
    CHECK(fm.map(xl.interior(a, 4)) == yl.interior(a, 4));
    const auto fib = topent::fibers(fm);
    std::size_t doubles = 0;
    for (const auto& f : fib) {
      CHECK(!f.empty());
      if (f.size() == 2) ++doubles;
      CHECK(f.size() <= 2);
    }
    CHECK(doubles == 1);
    CHECK(fib[yl.limit_zero()].size() == 2);
    const auto report = topent::verify_factor(fm, 5);
    CHECK(report.ok());
    CHECK(report.max_fiber == 2);
    CHECK(report.finite_to_one);
  }

  TEST_CASE("factor checker on identity and constant maps") {
    gen::Gen g(4);
    const Nads sys = g.system(5, 2);
    const topent::FactorMap id{sys, sys, [](PointId x) { return x; }};
    const auto r = topent::verify_factor(id, 6);
    CHECK(r.ok());
    CHECK(r.max_fiber == 1);

    const Nads two = topent::identity_system(std::make_shared<const topent::FiniteSpace>(
        topent::build_finite_space({"a", "b"}, std::vector<Rational>{0, 1, 1, 0})));
    const topent::FactorMap constant{sys, two, [](PointId) { return PointId{0}; }};
    const auto c = topent::verify_factor(constant, 3);
    CHECK_FALSE(c.surjective);
    CHECK(*c.first_missed == 1);
  }

  TEST_CASE("non-equivariant map names the first violation") {
    const Nads shift = topent::full_shift_constant(3);
    const topent::FactorMap fm{shift, shift, [](PointId x) { return x ^ 1U; }};
    const auto r = topent::verify_factor(fm, 3);
    CHECK_FALSE(r.equivariant);
    REQUIRE(r.first_violation.has_value());
    CHECK(r.first_violation->n == 1);
  }
}
