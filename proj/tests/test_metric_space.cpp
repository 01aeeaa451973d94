#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "summet/metric_space.hpp"
#include "summet/proximity.hpp"
#include "support/test_support.hpp"

using namespace summet;

namespace {

FiniteMetricSpace real_line_space() {
  // Points -1/2, 0, 1/2 on the real line.
  Matrix d = Matrix::square(3, 0.0);
  const double pos[3] = {-0.5, 0.0, 0.5};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d(i, j) = std::abs(pos[i] - pos[j]);
  }
  return FiniteMetricSpace{{"m", "zero", "p"}, d, 1, false};
}

bool is_pseudometric(const Matrix& m, double tol) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tol) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < -tol) return false;
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (m(i, j) > m(i, k) + m(k, j) + tol) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("validate: singleton space is valid") {
  const FiniteMetricSpace s{{"a"}, Matrix::square(1, 0.0), 0, false};
  CHECK(validate_metric(s).valid());
}

TEST_CASE("validate: triangle violation reported with its triple") {
  Matrix d = Matrix::square(3, 0.0);
  d(0, 1) = d(1, 0) = 1.0;
  d(1, 2) = d(2, 1) = 1.0;
  d(0, 2) = d(2, 0) = 5.0;  // d(a,c) > d(a,b) + d(b,c)
  const FiniteMetricSpace s{{"a", "b", "c"}, d, 0, false};
  const ValidationReport report = validate_metric(s);
  REQUIRE_FALSE(report.valid());
  bool found = false;
  for (const auto& issue : report.issues) {
    if (issue.kind == ValidationIssue::Kind::TriangleViolation && issue.i == 0 && issue.j == 2 &&
        issue.k == 1) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("validate: discrete 4-point space is a metric") {
  const FiniteMetricSpace s = testing::discrete_metric_space(4);
  CHECK(validate_metric(s).valid());
}

TEST_CASE("validate: asymmetry, diagonal and zero-off-diagonal detection") {
  Matrix d = Matrix::square(2, 0.0);
  d(0, 1) = 1.0;
  d(1, 0) = 2.0;
  const FiniteMetricSpace bad{{"a", "b"}, d, 0, false};
  const auto report = validate_metric(bad);
  REQUIRE_FALSE(report.valid());
  CHECK(report.issues[0].kind == ValidationIssue::Kind::Asymmetric);

  Matrix zo = Matrix::square(2, 0.0);
  const FiniteMetricSpace zero_pair{{"a", "b"}, zo, 0, false};
  bool flagged = false;
  for (const auto& issue : validate_metric(zero_pair).issues) {
    if (issue.kind == ValidationIssue::Kind::ZeroOffDiagonal) flagged = true;
  }
  CHECK(flagged);

  const FiniteMetricSpace pseudo{{"a", "b"}, zo, 0, true};
  CHECK(validate_metric(pseudo).valid());
}

TEST_CASE("eccentric pseudometric: full subset reproduces the distance") {
  testing::Rng rng(101);
  for (int inst = 0; inst < 20; ++inst) {
    const FiniteMetricSpace s = testing::random_metric_space(rng, 3 + inst % 10);
    const Matrix dhat = eccentric_pseudometric(s, s.all_indices());
    CHECK(max_abs_diff(dhat, s.d) <= 1e-12);
  }
}

TEST_CASE("eccentric pseudometric: real-line collapse at S = {0}") {
  const FiniteMetricSpace s = real_line_space();
  const Matrix dhat = eccentric_pseudometric(s, {1});
  CHECK(dhat(0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(dhat(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("eccentric pseudometric: singleton subset formula") {
  testing::Rng rng(33);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 7);
  for (std::size_t y = 0; y < s.size(); ++y) {
    const Matrix dhat = eccentric_pseudometric(s, {y});
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(dhat(i, j) == doctest::Approx(std::abs(s.d(i, y) - s.d(j, y))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("eccentric pseudometric: axioms and entrywise bound on random spaces") {
  testing::Rng rng(55);
  for (int inst = 0; inst < 10; ++inst) {
    const FiniteMetricSpace s = testing::random_metric_space(rng, 4 + inst * 2);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    std::vector<std::size_t> subset;
    for (std::size_t t = 0; t <= inst % 3u; ++t) subset.push_back(pick(rng));
    const Matrix dhat = eccentric_pseudometric(s, subset);
    CHECK(is_pseudometric(dhat, 1e-9));
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(dhat(i, j) <= s.d(i, j) + 1e-9);
      }
    }
  }
}

TEST_CASE("eccentric pseudometric: empty subset rejected") {
  const FiniteMetricSpace s = testing::discrete_metric_space(3);
  CHECK_THROWS_AS(eccentric_pseudometric(s, {}), InputError);
}

TEST_CASE("eccentric pseudometric: axioms hold exhaustively at thirty points") {
  testing::Rng rng(3001);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 30);
  const Matrix dhat = eccentric_pseudometric(s, {0, 5, 12, 29});
  CHECK(is_pseudometric(dhat, 1e-9));
}

TEST_CASE("validate rejects malformed shapes") {
  const FiniteMetricSpace mismatched{{"a", "b"}, Matrix::square(3, 0.0), 0, false};
  CHECK_THROWS_AS(validate_metric(mismatched), InputError);
  const FiniteMetricSpace bad_base{{"a"}, Matrix::square(1, 0.0), 3, false};
  CHECK_THROWS_AS(validate_metric(bad_base), InputError);
}

TEST_CASE("d_ac basics") {
  const FiniteMetricSpace s = testing::discrete_metric_space(4);

  PairSequence single{{{0, 1}}, {}};
  CHECK(d_ac(s, single, 1.0) == doctest::Approx(1.0));
  CHECK(d_ac(s, single, 2.5) == doctest::Approx(1.0));

  PairSequence twice{{{0, 1}, {0, 1}}, {}};
  CHECK(d_ac(s, twice, 1.0) == doctest::Approx(2.0));

  PairSequence empty;
  CHECK(d_ac(s, empty, 1.0) == doctest::Approx(0.0));

  CHECK_THROWS_AS(d_ac(s, single, 0.5), InputError);
}

TEST_CASE("d_cc basics and witnesses") {
  testing::Rng rng(77);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 6);

  SUBCASE("single pair attains d(x,y) at y") {
    PairSequence seq{{{2, 4}}, {}};
    const DccResult r = d_cc(s, seq, 1.0, s.all_indices());
    CHECK(r.value == doctest::Approx(s.d(2, 4)).epsilon(1e-12));
    const double at_witness = std::abs(s.d(2, r.witness) - s.d(4, r.witness));
    CHECK(at_witness == doctest::Approx(r.value).epsilon(1e-12));
  }

  SUBCASE("identical pairs give zero") {
    PairSequence seq{{{3, 3}, {1, 1}}, {}};
    CHECK(d_cc(s, seq, 2.0, s.all_indices()).value == doctest::Approx(0.0));
  }

  SUBCASE("discrete 4-point weighted example") {
    const FiniteMetricSpace disc = testing::discrete_metric_space(4);
    PairSequence seq{{{0, 1}, {2, 3}}, {0.5, 0.5}};
    CHECK(d_cc(disc, seq, 1.0, disc.all_indices()).value == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("dominated by d_ac and monotone in the subset") {
    for (int inst = 0; inst < 20; ++inst) {
      const PairSequence seq = testing::random_sequence(rng, s.size(), 4, inst % 2 == 0);
      for (double p : {1.0, 1.5, 2.0}) {
        const double ac = d_ac(s, seq, p);
        const DccResult all = d_cc(s, seq, p, s.all_indices());
        CHECK(all.value <= ac + 1e-9);
        const DccResult sub = d_cc(s, seq, p, {0, 1});
        CHECK(sub.value <= all.value + 1e-9);
      }
    }
  }

  SUBCASE("empty subset rejected") {
    PairSequence seq{{{0, 1}}, {}};
    CHECK_THROWS_AS(d_cc(s, seq, 1.0, {}), InputError);
  }
}

TEST_CASE("distance functional vanishes at base and is 1-Lipschitz") {
  testing::Rng rng(13);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 8);
  for (std::size_t y = 0; y < s.size(); ++y) {
    const LipschitzFunctional f = distance_functional(s, y);
    CHECK(f.values[s.base] == doctest::Approx(0.0));
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        CHECK(std::abs(f.values[a] - f.values[b]) <= s.d(a, b) + 1e-12);
      }
    }
  }
}
