#include <doctest.h>

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "conesel/constraints.hpp"
#include "conesel/error.hpp"
#include "conesel_test/generators.hpp"

using namespace conesel;

TEST_CASE("constraint set validation") {
  CHECK_THROWS_AS(ConstraintSet(Eigen::MatrixXd(1, 0), Eigen::VectorXd(0), 0), DimensionError);
  CHECK_THROWS_AS(ConstraintSet(Eigen::MatrixXd::Ones(1, 2), Eigen::VectorXd::Ones(3), 0), DimensionError);
  CHECK_THROWS_AS(ConstraintSet(Eigen::MatrixXd::Ones(1, 2), Eigen::VectorXd::Ones(2), 3), DimensionError);
  CHECK_THROWS_AS(ConstraintSet(Eigen::MatrixXd::Ones(1, 2), Eigen::VectorXd::Constant(2, NAN), 0), NonFiniteError);
  const ConstraintSet cs(Eigen::MatrixXd::Ones(2, 4), Eigen::VectorXd::Ones(4), 1);
  CHECK(cs.input_dim() == 2);
  CHECK(cs.size() == 4);
  CHECK(cs.num_soft() == 3);
  CHECK(cs.is_hard(0));
  CHECK_FALSE(cs.is_hard(1));
}

TEST_CASE("configuration helpers") {
  const ConstraintSet cs(Eigen::MatrixXd::Ones(1, 5), Eigen::VectorXd::Ones(5), 2);
  const auto hard = Configuration::hard_only(cs);
  CHECK(hard.to_string() == "11000");
  CHECK(hard.respects_hard(cs));
  CHECK(hard.dropped_soft_pct(cs) == 100.0);
  const auto all = Configuration::all_enforced(5);
  CHECK(all.dropped_soft_pct(cs) == 0.0);
  CHECK(hard.subset_of(all));
  CHECK_FALSE(all.subset_of(hard));
  const Configuration p({true, false, true, true, false});
  CHECK_FALSE(p.respects_hard(cs));
  CHECK(p.count_enforced() == 3);
}

TEST_CASE("nullspace of a two-constraint interval") {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  const ConstraintSet cs(a, Eigen::Vector2d(1, 1), 0);
  const auto nb = nullspace_basis(cs);
  REQUIRE(nb.nullity() == 1);
  CHECK((a * nb.basis).norm() < 1e-12);
  CHECK(nb.basis.norm() == doctest::Approx(1.0));
  CHECK(nb.basis(0, 0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(nb.reduced_bounds[0] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("nullspace of independent and zero columns") {
  CHECK(nullspace_basis(ConstraintSet(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 2), 0)).nullity() == 0);
  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 0, 0, 1, 0;
  const auto nb = nullspace_basis(ConstraintSet(a, Eigen::Vector3d(1, 2, 3), 0));
  REQUIRE(nb.nullity() == 1);
  CHECK((nb.basis.col(0) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);
  CHECK(nb.reduced_bounds[0] == doctest::Approx(3.0));
}

TEST_CASE("nullity plus rank equals the constraint count") {
  testing::Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const int m = testing::uniform_int(rng, 1, 4);
    const int c = testing::uniform_int(rng, 1, 12);
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(m, c);
    // Some rank-deficient cases: repeat a row.
    if (m > 1 && testing::uniform(rng, 0, 1) < 0.3) a.row(m - 1) = a.row(0);
    const auto nb = nullspace_basis(ConstraintSet(a, Eigen::VectorXd::Zero(c), 0));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv[i] > 1e-9 * std::max(1.0, sv[0]) ? 1 : 0;
    REQUIRE(nb.nullity() + rank == c);
    if (nb.nullity() > 0) {
      CHECK((a * nb.basis).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((nb.basis.transpose() * nb.basis - Eigen::MatrixXd::Identity(nb.nullity(), nb.nullity()))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("with_basis checks the row count") {
  const ConstraintSet cs(Eigen::MatrixXd::Ones(1, 3), Eigen::Vector3d(1, 2, 3), 0);
  CHECK_THROWS_AS(with_basis(cs, Eigen::MatrixXd::Ones(2, 1)), DimensionError);
  const auto nb = with_basis(cs, Eigen::MatrixXd::Ones(3, 1));
  CHECK(nb.reduced_bounds[0] == 6.0);
}

TEST_CASE("masking selects enforced columns in order") {
  Eigen::MatrixXd a(1, 5);
  a << 1, 2, 3, 4, 5;
  const ConstraintSet cs(a, Eigen::VectorXd::LinSpaced(5, 10, 14), 2);
  const auto all = mask(cs, Configuration::all_enforced(5));
  CHECK(all.normals == cs.normals());
  CHECK(all.bounds == cs.bounds());
  const auto hard = mask(cs, Configuration::hard_only(cs));
  CHECK(hard.normals == a.leftCols(2));
  CHECK(hard.bounds == Eigen::Vector2d(10, 11));

  Eigen::MatrixXd a3(1, 3);
  a3 << 7, 8, 9;
  const auto picked = mask(ConstraintSet(a3, Eigen::Vector3d(1, 2, 3), 0), Configuration({true, false, true}));
  CHECK(picked.indices == std::vector<Eigen::Index>{0, 2});
  CHECK(picked.normals(0, 1) == 9.0);
  CHECK_THROWS_AS(mask(cs, Configuration::all_enforced(4)), DimensionError);
}

TEST_CASE("text round trip") {
  testing::Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto cs = testing::random_instance(rng).cs;
    std::stringstream io;
    write_constraint_set(io, cs);
    const auto back = read_constraint_set(io);
    CHECK(back.normals() == cs.normals());
    CHECK(back.bounds() == cs.bounds());
    CHECK(back.num_hard() == cs.num_hard());
  }
}

TEST_CASE("text parse errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_constraint_set(in);
  };
  CHECK_NOTHROW(parse("1 2 0\n1 -1\n1 1\n"));
  CHECK_THROWS_AS(parse("1 2 0\n1 -1\n1\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 0\n1 -1\n1 1 7\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 0\n1 x\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 3\n1 -1\n1 1\n"), Error);
  CHECK_THROWS_AS(parse(""), ParseError);
}
