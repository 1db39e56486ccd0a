#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hvm/exprs.hpp"
#include "hvm/hvcore.hpp"
#include "hvm/random.hpp"
#include "oracles.hpp"

using namespace hvm;

namespace {

PureState bell_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector v(4);
  v << r, 0, 0, r;
  return PureState(v);
}

}  // namespace

TEST_CASE("hidden variable draws") {
  SUBCASE("reproducible per seed") {
    Rng a(42), b(42), c(43);
    const double x = draw_hidden(a);
    CHECK(x == draw_hidden(b));
    CHECK(x != draw_hidden(c));
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  SUBCASE("substreams depend only on (seed, index)") {
    Rng s1 = Rng::substream(9, 5);
    Rng s2 = Rng::substream(9, 5);
    Rng s3 = Rng::substream(9, 6);
    const double v = draw_hidden(s1);
    CHECK(v == draw_hidden(s2));
    CHECK(v != draw_hidden(s3));
  }
  SUBCASE("mean of 1e5 draws") {
    Rng rng(0);
    double total = 0.0;
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const double x = draw_hidden(rng);
      total += x;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    CHECK(std::abs(total / 1e5 - 0.5) <= 0.005);
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
  }
}

TEST_CASE("hidden state validates c") {
  CHECK_THROWS_AS(HiddenState(basis_ket(2, 0), 0.0), Error);
  CHECK_THROWS_AS(HiddenState(basis_ket(2, 0), 1.0), Error);
  CHECK_NOTHROW(HiddenState(basis_ket(2, 0), 0.5));
}

TEST_CASE("predict on worked examples") {
  const PureState s00 = basis_ket(4, 0);
  const auto zz = tensor(pauli('z'), pauli('z'));
  const auto ix = tensor(identity(2), pauli('x'));
  const auto xx = tensor(pauli('x'), pauli('x'));

  CHECK(predict(zz, HiddenState(s00, 0.4)) == doctest::Approx(1.0));
  CHECK(predict(ix, HiddenState(s00, 0.4)) == doctest::Approx(-1.0));
  CHECK(cumulative_weights(ix.spectrum(), s00)[0] == doctest::Approx(0.5));
  for (double c : {0.01, 0.3, 0.7, 0.99}) {
    CHECK(predict(xx, HiddenState(bell_state(), c)) == doctest::Approx(1.0));
  }
}

TEST_CASE("predict errors") {
  CHECK_THROWS_AS(predict(pauli('z'), HiddenState(basis_ket(4, 0), 0.5)), Error);

  // A decomposition missing weight is malformed.
  std::vector<SpectralBranch> partial{{1.0, basis_ket(2, 0).vector() * basis_ket(2, 0).vector().adjoint(), 1}};
  const SpectralDecomposition broken(std::move(partial), 2, 1e-9);
  try {
    predict(broken, HiddenState(basis_ket(2, 1), 0.5));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedDecomposition);
  }
}

TEST_CASE("predict agrees with a brute-force threshold over known eigenbases") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const ComplexMatrix u = random_unitary(dim, rng);
    std::vector<double> values(dim);
    for (auto& v : values) v = static_cast<double>(static_cast<int>(rng.next_u64() % 4) - 1);
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) d(static_cast<Eigen::Index>(k)) = values[k];
    ComplexMatrix m = u * d.asDiagonal() * u.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    const HermitianOperator op(m);
    const PureState psi = random_state(dim, rng);

    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> probs;
    for (double v : distinct) {
      probs.push_back((oracle::projector_from_basis(u, values, v) * psi.vector()).squaredNorm());
    }
    const double c = draw_hidden(rng);
    CHECK(predict(op, HiddenState(psi, c)) == doctest::Approx(distinct[oracle::threshold_index(probs, c)]));
  }
}

TEST_CASE("prediction map properties") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto op = random_observable(dim, rng);
    const PureState psi = random_state(dim, rng);

    // Global phase invariance.
    const PureState phased(psi.vector() * std::polar(1.0, 2.0 * std::numbers::pi * draw_hidden(rng)));
    const double c = draw_hidden(rng);
    CHECK(predict(op, HiddenState(psi, c)) == predict(op, HiddenState(phased, c)));

    // Non-contextual: only the operator matters, not how it was constructed.
    const ObservableExpression via_expr(scale(2.0, scale(0.5, leaf(op))));
    CHECK(predict(via_expr.eval_operator(), HiddenState(psi, c)) == doctest::Approx(predict(op, HiddenState(psi, c))));

    // Monotone in c.
    double prev = -1e300;
    for (int k = 1; k < 200; ++k) {
      const double v = predict(op, HiddenState(psi, k / 200.0));
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("eigenstates predict their eigenvalue for every c") {
  const auto xx = tensor(pauli('x'), pauli('x'));
  for (int k = 1; k < 100; ++k) {
    CHECK(predict(xx, HiddenState(bell_state(), k / 100.0)) == doctest::Approx(1.0));
  }
}

TEST_CASE("update collapses onto the selected branch") {
  const PureState s00 = basis_ket(4, 0);
  const auto yy = tensor(pauli('y'), pauli('y'));
  CHECK(update(yy.spectrum(), s00, -1.0).equal_up_to_phase(bell_state(), 1e-12));

  // |0> (x) (|0> - |1>)/sqrt2
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector expected(4);
  expected << r, -r, 0, 0;
  const auto ix = tensor(identity(2), pauli('x'));
  CHECK(update(ix.spectrum(), s00, -1.0).equal_up_to_phase(PureState(expected), 1e-12));

  const auto xx = tensor(pauli('x'), pauli('x'));
  CHECK(update(xx.spectrum(), bell_state(), 1.0).equal_up_to_phase(bell_state(), 1e-12));

  SUBCASE("errors") {
    try {
      update(pauli('z').spectrum(), basis_ket(2, 0), 3.0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotABranch);
    }
    try {
      update(pauli('z').spectrum(), basis_ket(2, 0), -1.0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kZeroProbabilityBranch);
    }
  }
}

TEST_CASE("measure: repeatability and compatibility persistence") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto op = random_observable(dim, rng);
    const HiddenState hs(random_state(dim, rng), draw_hidden(rng));
    const auto first = measure(op, hs, rng);
    const auto second = measure(op, first.next, rng);
    CHECK(first.record.value == second.record.value);
    CHECK(second.record.post_state.equal_up_to_phase(first.record.post_state, 1e-9));

    const auto family = random_commuting_family(dim, 2, rng);
    const auto& a = family.operators[0];
    const auto& b = family.operators[1];
    const auto m1 = measure(a, hs, rng);
    const auto m2 = measure(b, m1.next, rng);
    const auto m3 = measure(a, m2.next, rng);
    CHECK(m1.record.value == m3.record.value);
  }
}

TEST_CASE("sigma_z measured twice agrees") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const HiddenState hs(random_state(2, rng), draw_hidden(rng));
    const auto first = measure(pauli('z'), hs, rng);
    CHECK(measure(pauli('z'), first.next, rng).record.value == first.record.value);
  }
}

TEST_CASE("injected step replays the second trace iteration") {
  const auto yy = tensor(pauli('y'), pauli('y')).with_label("A23");
  const auto out = measure_step(yy, HiddenState(basis_ket(4, 0), 0.1), 0.7);
  CHECK(out.record.value == doctest::Approx(-1.0));
  CHECK(out.record.c_used == 0.1);
  CHECK(out.record.observable_label == "A23");
  CHECK(out.record.post_state.equal_up_to_phase(bell_state(), 1e-9));
  CHECK(out.next.c() == 0.7);
}

TEST_CASE("spin-half Born frequency") {
  const double theta = std::numbers::pi / 3.0;
  ComplexVector v(2);
  v << std::cos(theta), std::sin(theta);
  const PureState psi = PureState::normalized(v);
  const int n = 100000;
  Rng rng(123);
  int plus = 0;
  HiddenState hs(psi, draw_hidden(rng));
  for (int t = 0; t < n; ++t) {
    const auto out = measure(pauli('z'), HiddenState(psi, hs.c()), rng);
    plus += out.record.value > 0;
    hs = out.next;
  }
  const double p = std::pow(std::cos(theta), 2);
  CHECK(std::abs(plus / static_cast<double>(n) - p) <= 5.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("scripted draws and measurement sequences") {
  const auto square = peres_mermin();
  const std::vector<HermitianOperator> ops{square.cell(2, 2), square.cell(1, 2), square.cell(0, 2)};
  const auto trace = measure_sequence(ops, HiddenState(basis_ket(4, 0), 0.4), scripted_draw({0.1, 0.7}));
  REQUIRE(trace.records.size() == 3);
  CHECK(trace.is_chained());
  CHECK(trace.records[0].value == doctest::Approx(1.0));
  CHECK(trace.records[1].value == doctest::Approx(-1.0));
  CHECK(trace.records[2].value == doctest::Approx(1.0));
  CHECK(trace.records[2].c_used == 0.7);

  auto draw = scripted_draw({0.5});
  CHECK(draw() == 0.5);
  CHECK_THROWS_AS(draw(), Error);
}
