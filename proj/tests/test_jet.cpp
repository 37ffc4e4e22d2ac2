#include "support.hpp"

#include <doctest.h>

using namespace admflux;
using admflux::testing::random_jet;

TEST_CASE("flat jet has identity metric and zero derivatives") {
  const MetricJet2 jet = MetricJet2::flat(4);
  CHECK(jet.dim() == 4);
  CHECK(jet.g().isIdentity(0.0));
  CHECK(jet.h().isZero(0.0));
  for (double v : jet.dg_data()) CHECK(v == 0.0);
  for (double v : jet.ddg_data()) CHECK(v == 0.0);
}

TEST_CASE("symmetric setters fill every index permutation") {
  MetricJet2 jet(3);
  jet.set_g(0, 2, 0.25);
  jet.set_dg(1, 2, 0, 3.0);
  jet.set_ddg(2, 0, 1, 2, -7.0);
  CHECK(jet.g()(2, 0) == 0.25);
  CHECK(jet.g()(0, 0) == 1.0);
  CHECK(jet.dg(1, 0, 2) == 3.0);
  CHECK(jet.ddg(0, 2, 2, 1) == -7.0);
  CHECK(jet.ddg(2, 0, 1, 2) == -7.0);
  CHECK(jet.symmetry_defect() == 0.0);
}

TEST_CASE("add_* touches each distinct permutation once") {
  MetricJet2 jet(3);
  jet.add_h(1, 1, 2.0);
  jet.add_h(0, 1, 1.0);
  jet.add_dg(2, 0, 0, 1.5);
  jet.add_dg(2, 0, 1, 0.5);
  jet.add_ddg(1, 1, 2, 2, 4.0);
  jet.add_ddg(0, 1, 0, 2, 1.0);
  CHECK(jet.h()(1, 1) == 2.0);
  CHECK(jet.h()(1, 0) == 1.0);
  CHECK(jet.dg(2, 0, 0) == 1.5);
  CHECK(jet.dg(2, 1, 0) == 0.5);
  CHECK(jet.ddg(1, 1, 2, 2) == 4.0);
  CHECK(jet.ddg(1, 0, 2, 0) == 1.0);
  CHECK(jet.symmetry_defect() == 0.0);
}

TEST_CASE("jet arithmetic acts on h and all derivatives") {
  std::mt19937_64 rng(7);
  const MetricJet2 a = random_jet(rng, 3);
  const MetricJet2 b = random_jet(rng, 3);
  const MetricJet2 sum = a + b;
  CHECK((sum.h() - (a.h() + b.h())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sum.dg(1, 2, 0) == a.dg(1, 2, 0) + b.dg(1, 2, 0));
  CHECK((sum - b).max_abs_difference(a) < 1e-15);
  const MetricJet2 half = 0.5 * a;
  CHECK(half.ddg(2, 1, 0, 0) == 0.5 * a.ddg(2, 1, 0, 0));
  CHECK(a.max_abs_difference(a) == 0.0);
}

TEST_CASE("set_g stores the deviation from the identity") {
  MetricJet2 jet(3);
  jet.set_g(1, 1, 1.0 + 1e-12);
  CHECK(jet.h()(1, 1) == doctest::Approx(1e-12).epsilon(1e-4));
  jet.set_h(2, 2, 1e-20);
  CHECK(jet.h()(2, 2) == 1e-20);
}
