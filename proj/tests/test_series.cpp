#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gl3adlv/adlv.hpp"
#include "gl3adlv/series.hpp"

using namespace gl3;

namespace {

TSeries rnd(const FieldCtx& F, CounterRng& r, int lo, int hi, int prec) {
  std::vector<std::pair<int, felem>> terms;
  for (int e = lo; e < hi; ++e) terms.emplace_back(e, F.sample(r.next()));
  return TSeries::from_terms(F, terms, prec);
}

} // namespace

TEST_CASE("window basics") {
  FieldCtx F(2, 1, 2);
  TSeries a = TSeries::from_terms(F, {{-1, 1}, {0, 1}, {1, 1}}, 4);
  CHECK(a.valuation() == -1);
  CHECK(a.coeff(2) == 0);
  CHECK_THROWS_AS((void)a.coeff(4), InsufficientPrecision);
  TSeries z(F, 3);
  CHECK(z.zero_window());
  CHECK_THROWS_AS((void)z.valuation(), InsufficientPrecision);

  // (t^-1 + 1 + t)(1 + t) = t^-1 + t^2 over F_2
  TSeries b = TSeries::from_terms(F, {{0, 1}, {1, 1}}, 4);
  TSeries p = a * b;
  CHECK(p.coeff(-1) == 1);
  CHECK(p.coeff(0) == 0);
  CHECK(p.coeff(1) == 0);
  CHECK(p.coeff(2) == 1);
}

TEST_CASE("product window rule") {
  FieldCtx F(2, 1, 1);
  TSeries a = TSeries::monomial(F, -2, 1, 5);  // window [-2, 5)
  TSeries b = TSeries::monomial(F, 1, 1, 3);   // window [1, 3)
  TSeries p = a * b;
  CHECK(p.lo() == -1);
  CHECK(p.prec() == std::min(-2 + 3, 1 + 5));
}

TEST_CASE("inversion against multiplication, 1000 cases") {
  FieldCtx F(2, 1, 2);
  CounterRng r(42);
  for (int i = 0; i < 1000; ++i) {
    int v = int(r.next() % 5) - 2;
    TSeries s = rnd(F, r, v + 1, v + 10, v + 10);
    TSeries lead = TSeries::monomial(F, v, 1 + felem(r.next() % 3), v + 10);
    s = s + lead;
    TSeries one = s * s.invert();
    CHECK(one.coeff(0) == 1);
    for (int e = 1; e < one.prec(); ++e) CHECK(one.coeff(e) == 0);
  }
}

TEST_CASE("ring axioms on windows, 1000 cases") {
  FieldCtx F(3, 1, 2);
  CounterRng r(7);
  for (int i = 0; i < 1000; ++i) {
    TSeries a = rnd(F, r, -2, 6, 6);
    TSeries b = rnd(F, r, -1, 5, 5);
    TSeries c = rnd(F, r, 0, 7, 7);
    CHECK((a * b).equals_window(b * a));
    CHECK(((a * b) * c).equals_window(a * (b * c)));
    CHECK((a * (b + c)).equals_window(a * b + a * c));
    CHECK((a + b).equals_window(b + a));
    CHECK((a - a).zero_window());
  }
}

TEST_CASE("precision monotonicity") {
  FieldCtx F(2, 1, 3);
  CounterRng r(11);
  for (int i = 0; i < 1000; ++i) {
    TSeries a = rnd(F, r, -1, 12, 12);
    TSeries b = rnd(F, r, 0, 12, 12) + TSeries::monomial(F, 0, 1, 12);
    TSeries wide = a * b.invert();
    TSeries narrow = a.truncated(6) * b.truncated(6).invert();
    CHECK(wide.equals_window(narrow)); // agree on the common window
    CHECK(narrow.prec() <= wide.prec());
  }
}

TEST_CASE("sigma is a ring homomorphism fixing base coefficients") {
  FieldCtx F(2, 1, 2);
  CounterRng r(3);
  for (int i = 0; i < 1000; ++i) {
    TSeries a = rnd(F, r, -2, 6, 6);
    TSeries b = rnd(F, r, -2, 6, 6);
    CHECK((a * b).sigma().equals_window(a.sigma() * b.sigma()));
    CHECK((a + b).sigma().equals_window(a.sigma() + b.sigma()));
    CHECK(a.sigma(2).equals_window(a)); // m = 2
  }
  TSeries base = TSeries::from_terms(F, {{0, 1}, {3, 1}}, 5);
  CHECK(base.sigma().equals_window(base));
}

TEST_CASE("retry driver doubles up to the cap") {
  FieldCtx F(2, 1, 1);
  int calls = 0;
  int got = with_precision_retry(4, [&](int prec) {
    ++calls;
    if (prec < 16) throw InsufficientPrecision(prec);
    return prec;
  });
  CHECK(got == 16);
  CHECK(calls == 3);
  CHECK_THROWS_AS(with_precision_retry(4,
                                       [&](int prec) -> int {
                                         throw InsufficientPrecision(prec);
                                       }),
                  InsufficientPrecision);
}

TEST_CASE("shift and scale") {
  FieldCtx F(5, 1, 1);
  TSeries a = TSeries::from_terms(F, {{0, 2}, {1, 3}}, 4);
  CHECK(a.shifted(2).coeff(2) == 2);
  CHECK(a.shifted(2).valuation() == 2);
  CHECK(a.scaled(3).coeff(0) == 1); // 2*3 = 6 = 1 mod 5
  CHECK(a.scaled(0).zero_window());
  CHECK((a.negated() + a).zero_window());
}
