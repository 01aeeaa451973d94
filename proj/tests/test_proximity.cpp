#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "summet/proximity.hpp"
#include "support/test_support.hpp"

using namespace summet;

namespace {

// Independent route for the molecule norm: moving the positive part onto the
// negative part at minimal transport cost. Molecules with quarter-integer
// coefficients scale to an integer instance for the exhaustive oracle.
double ae_norm_via_transport(const FiniteMetricSpace& s, const Molecule& m, long denom) {
  std::vector<long> supplies;
  std::vector<long> demands;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double scaled = m.coefficients[i] * static_cast<double>(denom);
    const long units = std::lround(scaled);
    if (units > 0) {
      pos.push_back(i);
      supplies.push_back(units);
    } else if (units < 0) {
      neg.push_back(i);
      demands.push_back(-units);
    }
  }
  if (pos.empty()) return 0.0;
  std::vector<std::vector<double>> cost(pos.size(), std::vector<double>(neg.size(), 0.0));
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = 0; b < neg.size(); ++b) cost[a][b] = s.d(pos[a], neg[b]);
  }
  return testing::transport_min_cost_bruteforce(supplies, demands, cost) /
         static_cast<double>(denom);
}

void check_witness(const FiniteMetricSpace& s, const Molecule& m, const AeNormResult& r) {
  CHECK(r.witness.values[s.base] == doctest::Approx(0.0).epsilon(1e-12));
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      CHECK(r.witness.values[a] - r.witness.values[b] <= s.d(a, b) + 1e-9);
    }
  }
  CHECK(pairing(m, r.witness) == doctest::Approx(r.value).epsilon(1e-7));
}

}  // namespace

TEST_CASE("ae_norm embeds pairs isometrically") {
  testing::Rng rng(2024);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 7);
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (x == y) continue;
      const Molecule m = pair_molecule(s.size(), x, y);
      const AeNormResult r = ae_norm(s, m);
      CHECK(r.value == doctest::Approx(s.d(x, y)).epsilon(1e-9));
      check_witness(s, m, r);
    }
  }
}

TEST_CASE("ae_norm of the zero molecule is zero") {
  const FiniteMetricSpace s = testing::discrete_metric_space(3);
  const Molecule zero{std::vector<double>(3, 0.0)};
  CHECK(ae_norm(s, zero).value == doctest::Approx(0.0));
}

TEST_CASE("ae_norm on the discrete 4-point counterexample molecule") {
  const FiniteMetricSpace s = testing::discrete_metric_space(4);
  Molecule m{std::vector<double>(4, 0.0)};
  m.coefficients[0] = 0.5;
  m.coefficients[1] = -0.5;
  m.coefficients[2] = 0.5;
  m.coefficients[3] = -0.5;
  const AeNormResult r = ae_norm(s, m);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  check_witness(s, m, r);
}

TEST_CASE("ae_norm agrees with the exhaustive transport oracle") {
  testing::Rng rng(31337);
  std::uniform_int_distribution<long> units(-8, 8);
  for (int inst = 0; inst < 25; ++inst) {
    const std::size_t n = 3 + inst % 3;
    const FiniteMetricSpace s = testing::random_metric_space(rng, n);
    std::vector<long> u(n, 0);
    long total = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      u[i] = units(rng);
      total += u[i];
    }
    u[n - 1] = -total;
    Molecule m{std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) m.coefficients[i] = static_cast<double>(u[i]) / 4.0;

    const double oracle = ae_norm_via_transport(s, m, 4);
    const AeNormResult r = ae_norm(s, m);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-8));
    check_witness(s, m, r);
  }
}

TEST_CASE("ae_norm matches the transport formulation on larger spaces") {
  // Dual route: the molecule norm solved over the Lipschitz ball must equal
  // the minimal cost of transporting the positive part onto the negative one.
  testing::Rng rng(60451);
  std::uniform_real_distribution<double> mass(0.1, 1.5);
  for (int inst = 0; inst < 6; ++inst) {
    const std::size_t n = 10 + 2 * static_cast<std::size_t>(inst);
    const FiniteMetricSpace s = testing::random_metric_space(rng, n);
    Molecule m{std::vector<double>(n, 0.0)};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      m.coefficients[i] = (i % 2 == 0 ? 1.0 : -1.0) * mass(rng);
      total += m.coefficients[i];
    }
    m.coefficients[n - 1] = -total;

    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.coefficients[i] > 0.0) pos.push_back(i);
      if (m.coefficients[i] < 0.0) neg.push_back(i);
    }
    LinearProgram transport(pos.size() * neg.size());
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = 0; b < neg.size(); ++b) {
        transport.objective[a * neg.size() + b] = -s.d(pos[a], neg[b]);
      }
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
      std::vector<double> row(transport.num_vars(), 0.0);
      for (std::size_t b = 0; b < neg.size(); ++b) row[a * neg.size() + b] = 1.0;
      transport.add_row(std::move(row), Relation::Equal, m.coefficients[pos[a]]);
    }
    for (std::size_t b = 0; b < neg.size(); ++b) {
      std::vector<double> row(transport.num_vars(), 0.0);
      for (std::size_t a = 0; a < pos.size(); ++a) row[a * neg.size() + b] = 1.0;
      transport.add_row(std::move(row), Relation::Equal, -m.coefficients[neg[b]]);
    }
    const LpSolution flow = solve_lp(transport);
    REQUIRE(flow.status == LpStatus::Optimal);
    const AeNormResult r = ae_norm(s, m);
    CHECK(r.value == doctest::Approx(-flow.objective).epsilon(1e-8));
  }
}

TEST_CASE("ae_norm rejects unbalanced molecules and size mismatches") {
  const FiniteMetricSpace s = testing::discrete_metric_space(3);
  Molecule bad{std::vector<double>{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(ae_norm(s, bad), InputError);
  Molecule wrong_size{std::vector<double>{1.0, -1.0}};
  CHECK_THROWS_AS(ae_norm(s, wrong_size), InputError);
}

TEST_CASE("d_wc single pair is exact in both modes") {
  testing::Rng rng(404);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 6);
  PairSequence seq{{{1, 4}}, {}};

  WcOptions exact;
  exact.mode = WcMode::Exact;
  const WcResult we = d_wc(s, seq, 1.0, exact);
  CHECK(we.exact());
  CHECK(we.value() == doctest::Approx(s.d(1, 4)).epsilon(1e-9));

  WcOptions bracket;
  bracket.mode = WcMode::Bracket;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const WcResult wb = d_wc(s, seq, p, bracket);
    CHECK(wb.lower == doctest::Approx(s.d(1, 4)).epsilon(1e-9));
    CHECK(wb.upper == doctest::Approx(s.d(1, 4)).epsilon(1e-9));
  }
}

TEST_CASE("d_wc on the discrete 4-point weighted example equals 1") {
  const FiniteMetricSpace s = testing::discrete_metric_space(4);
  PairSequence seq{{{0, 1}, {2, 3}}, {0.5, 0.5}};
  WcOptions opts;
  opts.mode = WcMode::Exact;
  const WcResult w = d_wc(s, seq, 1.0, opts);
  CHECK(w.value() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("d_wc edge cases") {
  const FiniteMetricSpace s = testing::discrete_metric_space(3);
  PairSequence empty;
  WcOptions opts;
  CHECK(d_wc(s, empty, 1.0, opts).value() == doctest::Approx(0.0));

  PairSequence seq{{{0, 1}}, {}};
  opts.mode = WcMode::Exact;
  CHECK_THROWS_AS(d_wc(s, seq, 2.0, opts), UnsupportedError);

  PairSequence too_long;
  for (int i = 0; i < 20; ++i) too_long.pairs.emplace_back(0, 1);
  CHECK_THROWS_AS(d_wc(s, too_long, 1.0, opts), InputError);
}

TEST_CASE("d_wc exact: serial and parallel enumerations agree bitwise") {
  testing::Rng rng(555);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 6);
  const PairSequence seq = testing::random_sequence(rng, s.size(), 8, true);
  WcOptions serial;
  serial.mode = WcMode::Exact;
  serial.policy = ExecPolicy::Serial;
  WcOptions parallel = serial;
  parallel.policy = ExecPolicy::Parallel;
  CHECK(d_wc(s, seq, 1.0, serial).value() == d_wc(s, seq, 1.0, parallel).value());
}

TEST_CASE("proximity chain over random instances") {
  testing::Rng rng(808);
  for (int inst = 0; inst < 25; ++inst) {
    const std::size_t n = 3 + inst % 5;
    const FiniteMetricSpace s = testing::random_metric_space(rng, n);
    const PairSequence seq = testing::random_sequence(rng, n, 1 + inst % 6, inst % 2 == 0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::vector<std::size_t> sub{pick(rng), pick(rng)};

    SUBCASE("") {}  // keep doctest quiet about loop subcases
    for (double p : {1.0, 1.5, 2.0}) {
      const double ac = d_ac(s, seq, p);
      const double cc_sub = d_cc(s, seq, p, sub).value;
      const double cc_all = d_cc(s, seq, p, s.all_indices()).value;
      CHECK(cc_sub <= cc_all + 1e-9);
      CHECK(cc_all <= ac + 1e-9);

      if (p == 1.0) {
        WcOptions opts;
        opts.mode = WcMode::Exact;
        const double wc = d_wc(s, seq, p, opts).value();
        CHECK(cc_all <= wc + 1e-9);
        CHECK(wc <= ac + 1e-9);
      } else {
        WcOptions opts;
        opts.mode = WcMode::Bracket;
        opts.starts = 8;
        const WcResult wr = d_wc(s, seq, p, opts);
        CHECK(wr.lower >= cc_all - 1e-9);
        CHECK(wr.upper == doctest::Approx(ac).epsilon(1e-12));
        CHECK(wr.lower <= wr.upper + 1e-9);
      }
    }
  }
}

TEST_CASE("single-pair norming ties ae_norm to the eccentric functional") {
  testing::Rng rng(99);
  const FiniteMetricSpace s = testing::random_metric_space(rng, 7);
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      const double norm = ae_norm(s, pair_molecule(s.size(), x, y)).value;
      PairSequence seq{{{x, y}}, {}};
      const double cc = d_cc(s, seq, 1.0, s.all_indices()).value;
      CHECK(norm == doctest::Approx(s.d(x, y)).epsilon(1e-9));
      CHECK(cc == doctest::Approx(s.d(x, y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("empirical k-norming transfers the eccentric bound to the weak one") {
  testing::Rng rng(123);
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 4 + inst % 5;
    const FiniteMetricSpace s = testing::random_metric_space(rng, n);
    const std::size_t n_pairs = 2 + inst % 3;
    const PairSequence seq = testing::random_sequence(rng, n, n_pairs, false);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> sub{pick(rng), pick(rng), pick(rng)};

    // k_emp over the sign-vector molecules of this sequence.
    double k_emp = 0.0;
    const std::uint64_t count = 1ull << n_pairs;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Molecule m{std::vector<double>(n, 0.0)};
      for (std::size_t i = 0; i < n_pairs; ++i) {
        const double sign = (mask >> i) & 1u ? -1.0 : 1.0;
        m.coefficients[seq.pairs[i].first] += sign;
        m.coefficients[seq.pairs[i].second] -= sign;
      }
      const double norm = ae_norm(s, m).value;
      double pair_sup = 0.0;
      for (std::size_t y : sub) {
        pair_sup = std::max(pair_sup, std::abs(pairing(m, distance_functional(s, y))));
      }
      if (norm <= 1e-12) continue;
      k_emp = pair_sup <= 1e-12 ? kInf : std::max(k_emp, norm / pair_sup);
    }

    WcOptions opts;
    opts.mode = WcMode::Exact;
    const double wc = d_wc(s, seq, 1.0, opts).value();
    const double cc_sub = d_cc(s, seq, 1.0, sub).value;
    if (std::isfinite(k_emp)) {
      CHECK(wc <= k_emp * cc_sub + 1e-9);
    }
  }
}
