#include <doctest.h>

#include <vector>

#include "jlie/chart.hpp"
#include "jlie/errors.hpp"
#include "jlie/expr.hpp"
#include "jlie/multivector.hpp"

using namespace jlie;

namespace {

Chart xyz() { return Chart::make({"x", "y", "z"}); }

MultiVector vf(const Chart& c, const char* fx, const char* fy, const char* fz) {
  MultiVector m(c, 1);
  m.add_term({0}, Expr::parse(c, fx));
  m.add_term({1}, Expr::parse(c, fy));
  m.add_term({2}, Expr::parse(c, fz));
  return m;
}

// Bivector of the central-extension structure on coordinates (x, y, z).
MultiVector heis_bivector(const Chart& c) {
  MultiVector m(c, 2);
  m.add_term({0, 1}, Expr::one(c));
  m.add_term({1, 2}, Expr::parse(c, "-y"));
  return m;
}

}  // namespace

TEST_CASE("wedge algebra") {
  Chart c = xyz();
  MultiVector dx(c, 1), dy(c, 1), dz(c, 1);
  dx.add_term({0}, Expr::one(c));
  dy.add_term({1}, Expr::one(c));
  dz.add_term({2}, Expr::one(c));

  CHECK(wedge(dx, dx).is_structural_zero());
  CHECK(wedge(dx, dy) == -wedge(dy, dx));
  CHECK(wedge(wedge(dx, dy), dz) == wedge(dx, wedge(dy, dz)));

  MultiVector m(c, 2);
  Expr f = Expr::parse(c, "x + 1");
  m.add_term({2, 0}, f);
  CHECK(m.component({0, 2}) == -f);
  CHECK(m.component({2, 0}) == f);
  CHECK(m.component({1, 2}).is_structural_zero());
  CHECK(m.component({0, 0}).is_structural_zero());

  MultiVector repeated(c, 2);
  repeated.add_term({1, 1}, f);
  CHECK(repeated.is_structural_zero());

  CHECK_THROWS_AS(m.add_term({0}, f), DomainError);
  CHECK_THROWS_AS(m.add_term({0, 5}, f), DomainError);
  Chart other = Chart::make({"u"});
  CHECK_THROWS_AS(m.add_term({0, 1}, Expr::one(other)), DomainError);
}

TEST_CASE("vector field action and commutator") {
  Chart c = xyz();
  // Left-invariant frame of the central extension.
  MultiVector x1 = vf(c, "1", "0", "0");
  MultiVector x2 = vf(c, "0", "1", "x");
  MultiVector x3 = vf(c, "0", "0", "1");

  CHECK(apply(x2, Expr::parse(c, "x*y*z")) == Expr::parse(c, "x*z + x^2*y"));
  CHECK(lie_bracket(x1, x2) == x3);
  CHECK(lie_bracket(x1, x3).is_structural_zero());
  CHECK(lie_bracket(x2, x3).is_structural_zero());

  // Bracket on fields agrees with the graded bracket at degree (1,1).
  MultiVector a = vf(c, "x*y", "0", "z");
  MultiVector b = vf(c, "0", "y + z", "x^2");
  CHECK(lie_bracket(a, b) == schouten(a, b));
  CHECK(schouten(a, b) == -schouten(b, a));
}

TEST_CASE("contraction with an exact one-form") {
  Chart c = xyz();
  MultiVector biv(c, 2);
  biv.add_term({0, 1}, Expr::one(c));
  Expr f = Expr::parse(c, "x^2*y");
  MultiVector got = contract_with_df(biv, f);
  MultiVector want(c, 1);
  want.add_term({1}, Expr::parse(c, "2*x*y"));
  want.add_term({0}, Expr::parse(c, "-x^2"));
  CHECK(got == want);

  // Degree-0 arguments collapse the graded bracket onto contraction.
  MultiVector lam = heis_bivector(c);
  MultiVector fs = MultiVector::scalar(f);
  CHECK(schouten(fs, lam) == contract_with_df(lam, f));
  CHECK(schouten(lam, fs) == contract_with_df(lam, f));
  CHECK(schouten(fs, fs).is_structural_zero());
  CHECK(schouten(fs, fs).degree() == 0);
}

TEST_CASE("graded bracket fixed values") {
  Chart c = xyz();
  MultiVector lam = heis_bivector(c);

  MultiVector expect(c, 3);
  expect.add_term({0, 1, 2}, Expr::constant(c, Rational(2)));
  CHECK(schouten(lam, lam) == expect);

  MultiVector reeb = vf(c, "0", "0", "1");
  CHECK(schouten(reeb, lam).is_structural_zero());
  CHECK(schouten(lam, reeb).is_structural_zero());

  // On a vector-field first argument the bracket is the Lie derivative.
  MultiVector dx(c, 1);
  dx.add_term({0}, Expr::one(c));
  MultiVector xm(c, 2);
  xm.add_term({1, 2}, Expr::parse(c, "x"));
  MultiVector lie(c, 2);
  lie.add_term({1, 2}, Expr::one(c));
  CHECK(schouten(dx, xm) == lie);
}

TEST_CASE("graded bracket symmetry and Leibniz laws") {
  Chart c = xyz();
  MultiVector x = vf(c, "x*y", "0", "z");
  MultiVector y = vf(c, "0", "y + z", "x^2");
  MultiVector z = vf(c, "z", "x", "0");

  MultiVector a(c, 2);
  a.add_term({0, 1}, Expr::parse(c, "x"));
  a.add_term({0, 2}, Expr::parse(c, "y*z"));
  MultiVector b(c, 2);
  b.add_term({1, 2}, Expr::parse(c, "y - 1"));
  b.add_term({0, 1}, Expr::parse(c, "x^2"));

  // [Q,P] = (-1)^(pq) [P,Q] at degrees (1,1), (1,2), (2,2).
  CHECK(schouten(y, x) == -schouten(x, y));
  CHECK(schouten(a, x) == schouten(x, a));
  CHECK(schouten(b, a) == schouten(a, b));

  // [P, Q^S] = [P,Q]^S + (-1)^((p-1) q) Q^[P,S].
  CHECK(schouten(x, wedge(y, z)) ==
        wedge(schouten(x, y), z) + wedge(y, schouten(x, z)));
  CHECK(schouten(a, wedge(x, y)) ==
        wedge(schouten(a, x), y) - wedge(x, schouten(a, y)));
  CHECK(schouten(a, wedge(b, x)) ==
        wedge(schouten(a, b), x) + wedge(b, schouten(a, x)));
}

TEST_CASE("multivector zero verdicts") {
  Chart st = Chart::make({"s", "t"});
  Expr t = Expr::coordinate(st, "t");
  MultiVector m(st, 1);
  m.add_term({0}, exp(t) * exp(-t) - Expr::one(st));
  CHECK(!m.is_structural_zero());
  CHECK(m.is_zero().status == ZeroStatus::ProbablyZero);

  MultiVector z(st, 2);
  CHECK(z.is_zero().status == ZeroStatus::ProvenZero);

  m.add_term({1}, Expr::coordinate(st, "s"));
  CHECK(m.is_zero().status == ZeroStatus::ProvenNonzero);
}

TEST_CASE("multivector print and JSON") {
  Chart c = xyz();
  MultiVector lam = heis_bivector(c);
  CHECK(lam.print() == "dx^dy - y * dy^dz");
  CHECK(MultiVector(c, 2).print() == "0");
  CHECK(MultiVector::scalar(Expr::parse(c, "x - 1")).print() == "x - 1");

  nlohmann::ordered_json j = lam.to_json();
  CHECK(j["degree"] == 2);
  CHECK(j["components"]["0,1"] == "1");
  CHECK(j["components"]["1,2"] == "-y");
  CHECK(MultiVector::from_json(c, j) == lam);

  nlohmann::ordered_json bad = {{"degree", 2}};
  CHECK_THROWS_AS(MultiVector::from_json(c, bad), ParseError);
  nlohmann::ordered_json badkey = {{"degree", 1}, {"components", {{"q", "1"}}}};
  CHECK_THROWS_AS(MultiVector::from_json(c, badkey), ParseError);
}
