#pragma once

#include <cstdint>
#include <vector>

#include "trimat_geom/errors.hpp"

namespace trimat_geom {

// Complete arithmetic tables for GF(q), q = p^k a prime power.
//
// Element i is the polynomial over GF(p) whose base-p digit expansion gives
// its coefficients (constant term = lowest digit), so index 0 is the additive
// identity and index 1 the multiplicative identity. For k = 1 the tables are
// plain integer arithmetic mod p. For k > 1 the modulus is the
// lexicographically smallest monic irreducible polynomial of degree k over
// GF(p), coefficients compared constant-term first. The same q always yields
// the same table.
struct FieldTable {
  int q = 0;  // order
  int p = 0;  // characteristic
  int k = 1;  // extension degree, q = p^k
  std::vector<uint8_t> add;   // q*q, row-major
  std::vector<uint8_t> mul;   // q*q, row-major
  std::vector<uint8_t> neg;   // q
  std::vector<uint8_t> inv;   // q, inv[0] unused
  std::vector<uint8_t> poly;  // modulus, k+1 coefficients, constant term first

  uint8_t add_at(int a, int b) const { return add[a * q + b]; }
  uint8_t mul_at(int a, int b) const { return mul[a * q + b]; }
  uint8_t sub_at(int a, int b) const { return add[a * q + neg[b]]; }
  uint8_t neg_at(int a) const { return neg[a]; }
  uint8_t inv_at(int a) const { return inv[a]; }
};

inline constexpr int kDefaultMaxQ = 16;

// Builds GF(q). Throws NotPrimePower if q is not a prime power and
// OrderTooLarge if q exceeds max_q.
FieldTable field_make(int q, int max_q = kDefaultMaxQ);

// Element indices 0..q-1 in ascending order; position 0 is zero, position 1
// is one.
std::vector<int> field_elements(const FieldTable& t);

}  // namespace trimat_geom
