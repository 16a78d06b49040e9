#include "trimat_geom/gf.hpp"

#include <algorithm>

namespace trimat_geom {

namespace {

// Polynomials over GF(p) as coefficient vectors, constant term first,
// no trailing zeros.
using Poly = std::vector<int>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_trim(r);
}

// Remainder of a mod m (m monic).
Poly poly_mod(Poly a, const Poly& m, int p) {
  a = poly_trim(a);
  while (a.size() >= m.size()) {
    int lead = a.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      int t = a[shift + i] - lead * m[i] % p;
      a[shift + i] = ((t % p) + p) % p;
    }
    a = poly_trim(a);
  }
  return a;
}

bool poly_is_zero(const Poly& a) { return a.empty(); }

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& f, int p) {
  int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      int64_t c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

// Lexicographically smallest (constant term first) monic irreducible of
// degree k over GF(p).
Poly smallest_irreducible(int p, int k) {
  int64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (int64_t code = 0; code < count; ++code) {
    Poly f(k + 1, 0);
    int64_t c = code;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  return {};  // unreachable: irreducibles exist for every (p, k)
}

Poly poly_of_index(int idx, int p, int k) {
  Poly a(k, 0);
  for (int i = 0; i < k; ++i) {
    a[i] = idx % p;
    idx /= p;
  }
  return poly_trim(a);
}

int index_of_poly(const Poly& a, int p) {
  int idx = 0, w = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    idx += a[i] * w;
    w *= p;
  }
  return idx;
}

}  // namespace

FieldTable field_make(int q, int max_q) {
  if (q < 2) throw Error(ErrorKind::BadInput, "field order must be >= 2");
  if (q > max_q)
    throw Error(ErrorKind::OrderTooLarge,
                "field order " + std::to_string(q) + " exceeds ceiling " +
                    std::to_string(max_q));
  int p = 0;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  int k = 0;
  int m = q;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1)
    throw Error(ErrorKind::NotPrimePower,
                std::to_string(q) + " is not a prime power");

  FieldTable t;
  t.q = q;
  t.p = p;
  t.k = k;
  t.add.assign(q * q, 0);
  t.mul.assign(q * q, 0);
  t.neg.assign(q, 0);
  t.inv.assign(q, 0);

  if (k == 1) {
    t.poly = {static_cast<uint8_t>(0), 1};  // x - 0 placeholder: modulus is p itself
    t.poly[0] = 0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        t.add[a * q + b] = static_cast<uint8_t>((a + b) % p);
        t.mul[a * q + b] = static_cast<uint8_t>((a * b) % p);
      }
  } else {
    Poly f = smallest_irreducible(p, k);
    t.poly.assign(f.begin(), f.end());
    for (int a = 0; a < q; ++a) {
      Poly pa = poly_of_index(a, p, k);
      for (int b = 0; b < q; ++b) {
        Poly pb = poly_of_index(b, p, k);
        Poly sum(std::max(pa.size(), pb.size()), 0);
        for (size_t i = 0; i < sum.size(); ++i) {
          int va = i < pa.size() ? pa[i] : 0;
          int vb = i < pb.size() ? pb[i] : 0;
          sum[i] = (va + vb) % p;
        }
        t.add[a * q + b] = static_cast<uint8_t>(index_of_poly(poly_trim(sum), p));
        t.mul[a * q + b] =
            static_cast<uint8_t>(index_of_poly(poly_mod(poly_mul(pa, pb, p), f, p), p));
      }
    }
  }

  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (t.add[a * q + b] == 0) t.neg[a] = static_cast<uint8_t>(b);
      if (a != 0 && t.mul[a * q + b] == 1) t.inv[a] = static_cast<uint8_t>(b);
    }
  return t;
}

std::vector<int> field_elements(const FieldTable& t) {
  std::vector<int> e(t.q);
  for (int i = 0; i < t.q; ++i) e[i] = i;
  return e;
}

}  // namespace trimat_geom
