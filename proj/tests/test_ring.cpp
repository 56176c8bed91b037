#include <doctest.h>

#include <random>

#include "kauffman/errors.hpp"
#include "kauffman/ring.hpp"

using namespace kauffman;

namespace {

const RingElem A = RingElem::A(), B = RingElem::B(), a = RingElem::a();

RingElem random_elem(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), nterms(0, 4), d(0, 2);
  LaurentPoly p;
  for (int i = nterms(rng); i > 0; --i) p += LaurentPoly::monomial({e(rng), e(rng), e(rng)}, c(rng));
  return RingElem::normalize(p, d(rng));
}

}  // namespace

TEST_CASE("constants match their defining formulas") {
  const auto& k = constants();
  const RingElem z = A - B;
  const RingElem zi = RingElem::inv_A_minus_B();
  CHECK(k.alpha == (a - RingElem::a(-1)) * zi + RingElem(1));
  CHECK(k.beta == (A * RingElem::a(-1) - B * a) * zi - A - B);
  CHECK(k.gamma == (B * B * a - A * A * RingElem::a(-1)) * zi + A * B);
  CHECK(k.delta == (B * B * B * a - A * A * A * RingElem::a(-1)) * zi);
  CHECK(z * zi == RingElem(1));
}

TEST_CASE("ring identities used by the skein proofs") {
  const auto& k = constants();
  CHECK(A * k.alpha + B + k.beta == a);
  CHECK((A * RingElem::a(-1) + B * B + B * k.beta + k.gamma).is_zero());
  CHECK((A * A + B * B + (A + B) * k.beta + A * B * k.alpha + k.gamma).is_zero());
  CHECK((A * B * k.beta + A * k.gamma + B * k.gamma - k.delta).is_zero());
}

TEST_CASE("add and normalize examples") {
  const auto& k = constants();
  CHECK(k.alpha + RingElem(-1) == (a - RingElem::a(-1)) * RingElem::inv_A_minus_B());
  const RingElem x = RingElem::inv_A_minus_B() + (-RingElem::inv_A_minus_B());
  CHECK(x.is_zero());
  CHECK(x.dpow() == 0);
  const LaurentPoly zA = LaurentPoly::var_A() - LaurentPoly::var_B();
  const RingElem y = RingElem::normalize(zA * LaurentPoly::var_a(), 1);
  CHECK(y == a);
  CHECK(y.dpow() == 0);
  CHECK(RingElem::normalize(LaurentPoly(), 3).dpow() == 0);
  // a - a^-1 + A - B does not vanish at A = B, so stays over (A-B)
  const LaurentPoly n = LaurentPoly::var_a() - LaurentPoly::var_a(-1) + zA;
  CHECK(RingElem::normalize(n, 1).dpow() == 1);
}

TEST_CASE("canonical text") {
  CHECK(RingElem().to_text() == "0");
  CHECK((a * RingElem::A(-2)).to_text() == "a*A^-2");
  CHECK(constants().alpha.to_text() == "(a + A - B - a^-1)/(A-B)^1");
  CHECK(parse_ring(constants().delta.to_text()) == constants().delta);
  CHECK(parse_ring("-3*a^2*B^-1 + 2") == RingElem(2) - RingElem(3) * RingElem::a(2) * RingElem::B(-1));
  CHECK_THROWS_AS(parse_ring("3*x"), Error);
}

TEST_CASE("constants are mirror invariant") {
  const auto& k = constants();
  for (const RingElem* c : {&k.alpha, &k.beta, &k.gamma, &k.delta}) CHECK(c->mirrored() == *c);
  CHECK((A * a).mirrored() == B * RingElem::a(-1));
}

TEST_CASE("SO(N) specialization") {
  const auto& k = constants();
  CHECK(specialize_soN(k.alpha, 2) == QPoly(2));
  CHECK(specialize_soN(k.beta, 2) == -QPoly::q(1) - QPoly::q(-1));
  CHECK(specialize_soN(k.gamma, 2).is_zero());
  CHECK(specialize_soN(RingElem(1), 5) == QPoly(1));
  CHECK(specialize_soN(k.beta, 2).to_text() == "-q - q^-1");
  // 1/(A-B) alone is not a Laurent polynomial in q
  CHECK_THROWS_AS(specialize_soN(RingElem::inv_A_minus_B(), 3), Error);
  try {
    specialize_soN(RingElem::inv_A_minus_B(), 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionFailure);
  }
}

TEST_CASE("property: ring axioms, normalization and text round trip") {
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 300; ++i) {
    const RingElem x = random_elem(rng), y = random_elem(rng), z = random_elem(rng);
    REQUIRE(x + y == y + x);
    REQUIRE(x * y == y * x);
    REQUIRE((x + y) + z == x + (y + z));
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x - x == RingElem());
    REQUIRE(RingElem::normalize(x.num(), x.dpow()) == x);
    REQUIRE(parse_ring(x.to_text()) == x);
    REQUIRE(x.mirrored().mirrored() == x);
    REQUIRE((x * y).mirrored() == x.mirrored() * y.mirrored());
    // canonical: (A-B) does not divide a numerator left over a denominator
    if (x.dpow() > 0) REQUIRE(RingElem::normalize(x.num(), 1).dpow() == 1);
  }
}

TEST_CASE("property: specialization is multiplicative where defined") {
  std::mt19937_64 rng(7);
  const auto& k = constants();
  const RingElem pool[] = {k.alpha, k.beta, k.gamma, k.delta, A, B, a, A * B - RingElem(2)};
  for (int i = 0; i < 200; ++i) {
    const RingElem& x = pool[rng() % 8];
    const RingElem& y = pool[rng() % 8];
    const int N = 2 + static_cast<int>(rng() % 4);
    REQUIRE(specialize_soN(x * y, N) == specialize_soN(x, N) * specialize_soN(y, N));
    REQUIRE(specialize_soN(x + y, N) == specialize_soN(x, N) + specialize_soN(y, N));
  }
}
