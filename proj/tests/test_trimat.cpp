#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "trimat_geom/trimat.hpp"

using namespace trimat_geom;

namespace {

TriMatrix mk(int n, std::initializer_list<int> entries) {
  TriMatrix m;
  m.n = n;
  int t = 0;
  for (int v : entries) m.e[t++] = static_cast<uint8_t>(v);
  return m;
}

// Exhaustive two-sided inverse search, the defining property of a unit.
bool has_inverse(const RingContext& ctx, const TriMatrix& a) {
  TriMatrix id = mat_identity(ctx.n);
  for (const TriMatrix& b : ctx.elems)
    if (mat_mul(ctx.field, a, b) == id && mat_mul(ctx.field, b, a) == id)
      return true;
  return false;
}

bool is_nilpotent(const RingContext& ctx, TriMatrix a) {
  TriMatrix p = a;
  for (int i = 1; i < ctx.n; ++i) p = mat_mul(ctx.field, p, a);
  return p == mat_zero(ctx.n);
}

}  // namespace

TEST_CASE("matrix addition examples") {
  FieldTable f3 = field_make(3);
  // [[1,0],[2,1]] + [[2,0],[2,2]] = [[0,0],[1,0]] over GF(3)
  CHECK(mat_add(f3, mk(2, {1, 2, 1}), mk(2, {2, 2, 2})) == mk(2, {0, 1, 0}));
  FieldTable f2 = field_make(2);
  RingContext ctx = ring_context(2, f2);
  for (const TriMatrix& a : ctx.elems) {
    CHECK(mat_add(f2, a, mat_zero(2)) == a);
    CHECK(mat_add(f2, a, a) == mat_zero(2));  // characteristic 2
  }
}

TEST_CASE("matrix multiplication examples") {
  FieldTable f2 = field_make(2);
  RingContext ctx = ring_context(2, f2);
  TriMatrix id = mat_identity(2);
  for (const TriMatrix& x : ctx.elems) CHECK(mat_mul(f2, id, x) == x);
  // strictly lower times strictly lower vanishes for n=2
  for (uint64_t a : ctx.radical)
    for (uint64_t b : ctx.radical)
      CHECK(mat_mul(f2, ctx.elems[a], ctx.elems[b]) == mat_zero(2));
  // [[1,0],[1,1]]^2 = I over GF(2)
  CHECK(mat_mul(f2, mk(2, {1, 1, 1}), mk(2, {1, 1, 1})) == id);
}

TEST_CASE("dimension mismatch is rejected") {
  FieldTable f = field_make(2);
  CHECK_THROWS_AS(mat_add(f, mk(2, {1, 0, 1}), mk(3, {1, 0, 1, 0, 0, 1})), Error);
  CHECK_THROWS_AS(mat_mul(f, mk(2, {1, 0, 1}), mk(3, {1, 0, 1, 0, 0, 1})), Error);
}

TEST_CASE("unit and radical censuses") {
  struct Case {
    int n, q;
    uint64_t ring, units, radical;
  } cases[] = {
      {2, 2, 8, 2, 2}, {2, 3, 27, 12, 3}, {3, 2, 64, 8, 8}, {3, 3, 729, 216, 27}};
  for (const Case& c : cases) {
    RingContext ctx = ring_context(c.n, field_make(c.q));
    CHECK(ctx.ring_size == c.ring);
    CHECK(ctx.elems.size() == c.ring);
    CHECK(ctx.units.size() == c.units);
    CHECK(ctx.radical.size() == c.radical);
  }
}

TEST_CASE("is_unit matches two-sided invertibility") {
  CHECK(is_unit(mat_identity(2)));
  CHECK_FALSE(is_unit(mat_zero(2)));
  for (auto [n, q] :
       {std::pair{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 8}, {2, 9}, {3, 2}, {3, 3}}) {
    RingContext ctx = ring_context(n, field_make(q));
    for (const TriMatrix& a : ctx.elems)
      CHECK(is_unit(a) == has_inverse(ctx, a));
  }
}

TEST_CASE("ring axioms exhaustively for small rings") {
  for (int q : {2, 3}) {
    RingContext ctx = ring_context(2, field_make(q));
    for (const TriMatrix& a : ctx.elems)
      for (const TriMatrix& b : ctx.elems)
        for (const TriMatrix& c : ctx.elems) {
          CHECK(mat_mul(ctx.field, mat_mul(ctx.field, a, b), c) ==
                mat_mul(ctx.field, a, mat_mul(ctx.field, b, c)));
          CHECK(mat_mul(ctx.field, a, mat_add(ctx.field, b, c)) ==
                mat_add(ctx.field, mat_mul(ctx.field, a, b),
                        mat_mul(ctx.field, a, c)));
        }
  }
}

TEST_CASE("ring axioms sampled for n=3") {
  RingContext ctx = ring_context(3, field_make(3));
  uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 11) % ctx.ring_size;
  };
  for (int i = 0; i < 2000; ++i) {
    const TriMatrix &a = ctx.elems[next()], &b = ctx.elems[next()],
                    &c = ctx.elems[next()];
    CHECK(mat_mul(ctx.field, mat_mul(ctx.field, a, b), c) ==
          mat_mul(ctx.field, a, mat_mul(ctx.field, b, c)));
    CHECK(mat_mul(ctx.field, a, mat_add(ctx.field, b, c)) ==
          mat_add(ctx.field, mat_mul(ctx.field, a, b), mat_mul(ctx.field, a, c)));
  }
}

TEST_CASE("radical is diagonal-zero, nilpotent, and unit-stable") {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    RingContext ctx = ring_context(n, field_make(q));
    for (uint64_t code = 0; code < ctx.ring_size; ++code) {
      const TriMatrix& a = ctx.elems[code];
      bool diag_zero = in_radical(a);
      bool characterization = is_nilpotent(ctx, a);
      for (uint64_t u : ctx.units) {
        if (!characterization) break;
        characterization = is_nilpotent(ctx, mat_mul(ctx.field, a, ctx.elems[u]));
      }
      CHECK(diag_zero == characterization);
      CHECK(diag_zero ==
            std::binary_search(ctx.radical.begin(), ctx.radical.end(), code));
    }
  }
}

TEST_CASE("code/decode round trip") {
  for (auto [n, q] : {std::pair{2, 4}, {3, 2}, {4, 2}, {3, 3}}) {
    FieldTable f = field_make(q);
    RingContext ctx = ring_context(n, f);
    for (uint64_t code = 0; code < ctx.ring_size; ++code) {
      CHECK(mat_code(f, ctx.elems[code]) == code);
      CHECK(mat_decode(f, n, code) == ctx.elems[code]);
    }
  }
}

TEST_CASE("unsupported dimensions are rejected") {
  FieldTable f = field_make(2);
  CHECK_THROWS_AS(ring_context(1, f), Error);
  CHECK_THROWS_AS(ring_context(5, f), Error);
}

TEST_CASE("rendering") {
  CHECK(mat_to_string(mk(2, {1, 2, 1})) == "[[1,0],[2,1]]");
  CHECK(mat_to_string(mat_zero(2)) == "[[0,0],[0,0]]");
}
