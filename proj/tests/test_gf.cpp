#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trimat_geom/gf.hpp"

using namespace trimat_geom;

namespace {
const int kPrimePowers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
}

TEST_CASE("q=2 addition is xor") {
  FieldTable f = field_make(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(f.add_at(a, b) == (a ^ b));
}

TEST_CASE("non prime powers are rejected") {
  CHECK_THROWS_AS(field_make(6), Error);
  CHECK_THROWS_AS(field_make(12), Error);
  CHECK_THROWS_AS(field_make(15), Error);
  try {
    field_make(6);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotPrimePower);
  }
}

TEST_CASE("ceiling is enforced and configurable") {
  CHECK_THROWS_AS(field_make(17), Error);
  try {
    field_make(17);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::OrderTooLarge);
  }
  FieldTable f = field_make(17, 32);
  CHECK(f.q == 17);
  CHECK(f.k == 1);
}

TEST_CASE("GF(4) multiplicative group is cyclic of order 3") {
  FieldTable f = field_make(4);
  for (int a = 1; a < 4; ++a) {
    int cube = f.mul_at(a, f.mul_at(a, a));
    CHECK(cube == 1);
  }
  // x^2 + x + 1, constant term first
  CHECK(f.poly == std::vector<uint8_t>{1, 1, 1});
}

TEST_CASE("field axioms hold exhaustively") {
  for (int q : kPrimePowers) {
    FieldTable f = field_make(q);
    CHECK(f.q == q);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add_at(a, 0) == a);
      CHECK(f.mul_at(a, 1) == a);
      CHECK(f.mul_at(a, 0) == 0);
      CHECK(f.add_at(a, f.neg_at(a)) == 0);
      if (a != 0) CHECK(f.mul_at(a, f.inv_at(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add_at(a, b) == f.add_at(b, a));
        CHECK(f.mul_at(a, b) == f.mul_at(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(f.add_at(f.add_at(a, b), c) == f.add_at(a, f.add_at(b, c)));
          CHECK(f.mul_at(f.mul_at(a, b), c) == f.mul_at(a, f.mul_at(b, c)));
          CHECK(f.mul_at(a, f.add_at(b, c)) ==
                f.add_at(f.mul_at(a, b), f.mul_at(a, c)));
        }
      }
    }
  }
}

TEST_CASE("frobenius endomorphism") {
  for (int q : kPrimePowers) {
    FieldTable f = field_make(q);
    auto pow_p = [&](int a) {
      int r = 1;
      for (int i = 0; i < f.p; ++i) r = f.mul_at(r, a);
      return r;
    };
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        CHECK(pow_p(f.add_at(a, b)) == f.add_at(pow_p(a), pow_p(b)));
  }
}

TEST_CASE("construction is deterministic") {
  for (int q : {4, 8, 9, 16}) {
    FieldTable a = field_make(q);
    FieldTable b = field_make(q);
    CHECK(a.add == b.add);
    CHECK(a.mul == b.mul);
    CHECK(a.poly == b.poly);
  }
}

TEST_CASE("field elements are 0..q-1 with identities first") {
  for (int q : {2, 3, 4}) {
    FieldTable f = field_make(q);
    std::vector<int> e = field_elements(f);
    REQUIRE(e.size() == static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) CHECK(e[i] == i);
    CHECK(f.add_at(e[0], 1) == 1);  // e[0] additive identity
    CHECK(f.mul_at(e[1], 1) == 1);  // e[1] multiplicative identity
  }
}
