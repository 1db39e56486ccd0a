#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hvm/exprs.hpp"
#include "hvm/random.hpp"
#include "oracles.hpp"

using namespace hvm;

namespace {

double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("operator evaluation of products") {
  const auto xx = tensor(pauli('x'), pauli('x'));
  const auto yy = tensor(pauli('y'), pauli('y'));
  const auto zz = tensor(pauli('z'), pauli('z'));

  const ObservableExpression c(product({leaf(xx), leaf(yy)}), "C");
  CHECK(dist(c.eval_operator().matrix(), -zz.matrix()) < 1e-12);
  CHECK(c.leaves().size() == 2);

  const ObservableExpression single(product({leaf(xx)}));
  CHECK(dist(single.eval_operator().matrix(), xx.matrix()) == 0.0);

  const auto sq = peres_mermin();
  CHECK(dist(sq.column_expression(2).eval_operator().matrix(), -ComplexMatrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("construction-time validation") {
  CHECK_THROWS_AS(ObservableExpression(product({leaf(pauli('x')), leaf(pauli('z'))})), Error);
  CHECK_THROWS_AS(ObservableExpression(sum({leaf(pauli('x')), leaf(identity(4))})), Error);
  // i * Z is not Hermitian.
  try {
    ObservableExpression bad(scale(cplx(0, 1), leaf(pauli('z'))));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotHermitian);
  }
  CHECK_THROWS_AS(product({}), Error);
  CHECK_THROWS_AS(sum({}), Error);

  // Complex factors are allowed when the result is Hermitian: i*(i*Z) = -Z.
  const ObservableExpression ok(scale(cplx(0, 1), scale(cplx(0, 1), leaf(pauli('z')))));
  CHECK(dist(ok.eval_operator().matrix(), -pauli('z').matrix()) < 1e-15);
  CHECK_THROWS_AS(ok.eval_real(std::vector<double>{1.0}), Error);
}

TEST_CASE("real evaluation") {
  const auto sq = peres_mermin();
  const auto col3 = sq.column_expression(2);
  CHECK(col3.eval_real(std::vector<double>{-1, -1, +1}) == 1.0);
  CHECK(col3.eval_real(std::vector<double>{+1, -1, +1}) == -1.0);
  CHECK(col3.eval_real(std::map<std::string, double>{{"A13", 1}, {"A23", -1}, {"A33", 1}}) == -1.0);
  CHECK_THROWS_AS(col3.eval_real(std::vector<double>{1, 1}), Error);
  CHECK_THROWS_AS(col3.eval_real(std::map<std::string, double>{{"A13", 1}}), Error);

  const auto a = pauli('z').with_label("a");
  const auto b = identity(2).with_label("b");
  const ObservableExpression s(sum({leaf(a), leaf(b)}));
  CHECK(s.eval_real(std::vector<double>{2, 3}) == 5.0);

  // Repeated leaves are one variable.
  const ObservableExpression sq_a(product({leaf(a), leaf(a)}));
  CHECK(sq_a.leaves().size() == 1);
  CHECK(sq_a.eval_real(std::vector<double>{-3}) == 9.0);
}

TEST_CASE("Peres-Mermin square") {
  const auto sq = peres_mermin();
  CHECK(dist(sq.cell(0, 0).matrix(), oracle::kron(oracle::id2(), oracle::sx())) == 0.0);
  CHECK(dist(sq.cell(2, 2).matrix(), oracle::kron(oracle::sz(), oracle::sz())) == 0.0);
  CHECK(dist(sq.cell(2, 0).matrix(), oracle::kron(oracle::sy(), oracle::sx())) == 0.0);
  CHECK(sq.cell(1, 2).label() == "A23");

  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(dist(sq.row_product(k).matrix(), id) <= 1e-12);
    CHECK(dist(sq.row_expression(k).eval_operator().matrix(), id) <= 1e-12);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        CHECK(commutes(sq.cell(k, a), sq.cell(k, b), 1e-10));
        CHECK(commutes(sq.cell(a, k), sq.cell(b, k), 1e-10));
      }
    }
  }
  CHECK(dist(sq.column_product(0).matrix(), id) <= 1e-12);
  CHECK(dist(sq.column_product(1).matrix(), id) <= 1e-12);
  CHECK(dist(sq.column_product(2).matrix(), -id) <= 1e-12);
}

TEST_CASE("implication operators") {
  const auto ops = implications_operators();
  const auto spec = ops.c.spectrum();
  REQUIRE(spec.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(spec.branches()[k].eigenvalue == doctest::Approx(k + 1.0));
  CHECK(commutes(ops.b1, ops.c));
  CHECK(commutes(ops.b2, ops.c));
  CHECK(ops.b1.matrix()(0, 0) == cplx(1.0));
  CHECK(ops.b1.matrix()(1, 1) == cplx(1.0));
  CHECK(ops.b1.matrix()(2, 2) == cplx(-1.0));
  CHECK(ops.b2.matrix()(0, 0) == cplx(-1.0));
  CHECK(ops.b2.matrix()(3, 3) == cplx(1.0));
}

TEST_CASE("leaf order inside a product does not change the operator") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto family = random_commuting_family(dim, 3, rng);
    std::vector<std::size_t> order{0, 1, 2};
    const ObservableExpression ref(product({leaf(family.operators[0]), leaf(family.operators[1]), leaf(family.operators[2])}));
    while (std::next_permutation(order.begin(), order.end())) {
      const ObservableExpression perm(product({leaf(family.operators[order[0]]), leaf(family.operators[order[1]]),
                                               leaf(family.operators[order[2]])}));
      CHECK(dist(perm.eval_operator().matrix(), ref.eval_operator().matrix()) < 1e-10);
    }
  }
}

TEST_CASE("common eigenvectors: f(B) psi = f~(b) psi") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto family = random_commuting_family(dim, 3, rng);
    const auto& b = family.operators;
    const ObservableExpression f(
        sum({product({leaf(b[0]), leaf(b[1])}), scale(-0.5, leaf(b[2])), scale(3.0, product({leaf(b[2]), leaf(b[2])}))}));
    const auto col = static_cast<Eigen::Index>(rng.next_u64() % dim);
    const ComplexVector psi = family.basis.col(col);
    std::vector<double> values;
    for (const auto& leaf_op : f.leaves()) values.push_back(psi.dot(leaf_op.matrix() * psi).real());
    const double expected = f.eval_real(values);
    CHECK((f.eval_operator().matrix() * psi - expected * psi).norm() < 1e-9);
  }
}
