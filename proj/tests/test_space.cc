#include <doctest.h>

#include "generators.h"
#include "topent/error.h"
#include "topent/space.h"

using topent::PointId;
using topent::Rational;
using topent::SpacePoint;
using topent::SymbolicKind;
using topent::SymbolicLayout;
using topent::Word;

TEST_SUITE("space") {
  TEST_CASE("sigma metric") {
    CHECK(topent::sigma_metric(Word::from_string("0110"), Word::from_string("0110")) == Rational());
    CHECK(topent::sigma_metric(Word::from_string("01110"), Word::from_string("10000")) == Rational(1));
    CHECK(topent::sigma_metric(Word::from_string("00110"), Word::from_string("00100")) == Rational(1, 8));
    CHECK_THROWS_AS(topent::sigma_metric(Word::from_string("01"), Word::from_string("011")), topent::LengthMismatch);
  }

  TEST_CASE("sigma metric is an ultrametric") {
    const int L = 5;
    for (std::uint64_t a = 0; a < 32; ++a) {
      for (std::uint64_t b = 0; b < 32; ++b) {
        for (std::uint64_t c = 0; c < 32; ++c) {
          const Rational ab = topent::sigma_metric(Word(a, L), Word(b, L));
          const Rational bc = topent::sigma_metric(Word(b, L), Word(c, L));
          REQUIRE(topent::sigma_metric(Word(a, L), Word(c, L)) <= topent::max(ab, bc));
        }
      }
    }
  }

  TEST_CASE("word basics") {
    const Word w = Word::from_string("0110");
    CHECK(w.length() == 4);
    CHECK(w.at(0) == 0);
    CHECK(w.at(1) == 1);
    CHECK(w.shifted().str() == "1100");
    CHECK(w.str() == "0110");
    CHECK_THROWS(Word(0, 1));
    CHECK_THROWS(Word::from_string("012"));
  }

  TEST_CASE("build_finite_space validates axioms") {
    const auto one = topent::build_finite_space({"a"}, [](PointId, PointId) { return Rational(); });
    CHECK(one.size() == 1);
    CHECK(one.diameter() == Rational());

    const std::vector<Rational> bad = {0, 1, 3, 1, 0, 1, 3, 1, 0};
    CHECK_THROWS_AS(topent::build_finite_space({"a", "b", "c"}, bad), topent::MetricAxiomViolation);
    try {
      topent::build_finite_space({"a", "b", "c"}, bad);
    } catch (const topent::MetricAxiomViolation& e) {
      CHECK(std::string(e.what()).find("triangle") != std::string::npos);
    }
    const std::vector<Rational> asym = {0, 1, 2, 0};
    CHECK_THROWS_AS(topent::build_finite_space({"a", "b"}, asym), topent::MetricAxiomViolation);
    const std::vector<Rational> zero = {0, 0, 0, 0};
    CHECK_THROWS_AS(topent::build_finite_space({"a", "b"}, zero), topent::MetricAxiomViolation);
  }

  TEST_CASE("word space at L=4 is a valid space of diameter 1") {
    const auto s = topent::build_word_space(4);
    CHECK(s.size() == 16);
    CHECK(s.diameter() == Rational(1));
  }

  TEST_CASE("example X sizes and distances") {
    const auto x = topent::build_example_x(2, 1);
    CHECK(x.size() == 6);
    const auto big = topent::build_example_x(4, 3);
    const SymbolicLayout& layout = *big.symbolic();
    CHECK(big.size() == 2 + 3 * 16);
    CHECK(big.diameter() == topent::compute_diameter(big));
    for (int level = 1; level <= 3; ++level) {
      for (std::uint64_t bits = 0; bits < 16; ++bits) {
        const PointId p = layout.interior(Word(bits, 4), level);
        const Rational h(1, level);
        if ((bits & 1U) == 0) {
          CHECK(big.distance(p, layout.limit_zero()) == h);
          CHECK(big.distance(p, *layout.limit_one()) >= Rational(1));
        } else {
          CHECK(big.distance(p, *layout.limit_one()) == h);
          CHECK(big.distance(p, layout.limit_zero()) >= Rational(1));
        }
        for (int m = 1; m <= 3; ++m) {
          for (std::uint64_t other = 0; other < 16; ++other) {
            if ((other & 1U) == (bits & 1U)) continue;
            CHECK(big.distance(p, layout.interior(Word(other, 4), m)) >= Rational(1));
          }
        }
      }
    }
    CHECK(big.distance(layout.limit_zero(), *layout.limit_one()) >= Rational(1));
  }

  TEST_CASE("example Y sizes, limit distances and fiber diameters") {
    CHECK(topent::build_example_y(2, 1).size() == 5);
    const auto y = topent::build_example_y(4, 4);
    const SymbolicLayout& layout = *y.symbolic();
    CHECK_FALSE(layout.limit_one().has_value());
    Rational previous(2);
    for (int level = 1; level <= 4; ++level) {
      Rational fiber_diam;
      Rational to_limit;
      for (std::uint64_t a = 0; a < 16; ++a) {
        const PointId p = layout.interior(Word(a, 4), level);
        CHECK(y.distance(p, layout.limit_zero()) == Rational(1, level));
        to_limit = topent::max(to_limit, y.distance(p, layout.limit_zero()));
        for (std::uint64_t b = 0; b < 16; ++b) {
          fiber_diam = topent::max(fiber_diam, y.distance(p, layout.interior(Word(b, 4), level)));
        }
      }
      CHECK(fiber_diam == Rational(1, level));
      CHECK(to_limit < previous);
      previous = to_limit;
    }
  }

  TEST_CASE("layout round trip and labels") {
    const SymbolicLayout layout(SymbolicKind::x_type, 3, 2);
    for (PointId id = 0; id < layout.size(); ++id) CHECK(layout.index_of(layout.point(id)) == id);
    CHECK(layout.label(0) == "zero");
    CHECK(layout.label(1) == "one");
    CHECK(layout.label(layout.interior(Word::from_string("011"), 2)) == "011@2");
    CHECK_THROWS_AS(layout.interior(Word::from_string("011"), 3), topent::TruncationExceeded);
    CHECK(layout.point(0).kind == SpacePoint::Kind::limit_zero);
  }

  TEST_CASE("random spaces satisfy the axioms and have integer distances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto s = topent::build_random_space(2 + seed % 9, seed);
      for (PointId x = 0; x < s.size(); ++x) {
        for (PointId y = 0; y < s.size(); ++y) CHECK(s.distance(x, y).is_integer());
      }
      CHECK_NOTHROW(topent::validate_metric(s.size(), [&](PointId x, PointId y) { return s.distance(x, y); }));
    }
  }

  TEST_CASE("min positive distance") {
    const auto s = topent::build_word_space(3);
    CHECK(*topent::min_positive_distance(s) == Rational(1, 4));
    const auto one = topent::build_finite_space({"a"}, [](PointId, PointId) { return Rational(); });
    CHECK_FALSE(topent::min_positive_distance(one).has_value());
  }
}
