#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trimat_geom/gf.hpp"

namespace trimat_geom {

inline constexpr int kMaxDim = 4;
inline constexpr int kMaxSlots = kMaxDim * (kMaxDim + 1) / 2;

// Lower triangular n x n matrix over GF(q). Only the on-or-below-diagonal
// entries are stored, row-major: (1,1),(2,1),(2,2),(3,1),(3,2),(3,3),...
// This slot order is fixed once and for all: every packed code below, and
// every canonical submodule code downstream, depends on it.
struct TriMatrix {
  int n = 0;
  std::array<uint8_t, kMaxSlots> e{};

  static constexpr int slot_count(int n) { return n * (n + 1) / 2; }
  // 0-based row i >= col j.
  static constexpr int slot(int i, int j) { return i * (i + 1) / 2 + j; }

  uint8_t at(int i, int j) const { return j > i ? 0 : e[slot(i, j)]; }
  void set(int i, int j, uint8_t v) { e[slot(i, j)] = v; }

  bool operator==(const TriMatrix& o) const {
    if (n != o.n) return false;
    for (int t = 0; t < slot_count(n); ++t)
      if (e[t] != o.e[t]) return false;
    return true;
  }
};

TriMatrix mat_zero(int n);
TriMatrix mat_identity(int n);

// Entrywise field addition. Throws DimensionMismatch when dimensions differ.
TriMatrix mat_add(const FieldTable& f, const TriMatrix& a, const TriMatrix& b);

// Matrix product restricted to the triangular slots; the product of two
// lower triangular matrices is lower triangular.
TriMatrix mat_mul(const FieldTable& f, const TriMatrix& a, const TriMatrix& b);

// A lower triangular matrix is invertible iff every diagonal entry is
// nonzero.
bool is_unit(const TriMatrix& a);

// Jacobson radical of T_n(q): exactly the strictly lower triangular matrices.
bool in_radical(const TriMatrix& a);

// code(M) = sum entries[t] * q^t, a bijection onto {0, ..., q^{S_n}-1}.
uint64_t mat_code(const FieldTable& f, const TriMatrix& m);
TriMatrix mat_decode(const FieldTable& f, int n, uint64_t code);

// Full n x n bracket rendering, e.g. "[[1,0],[2,1]]".
std::string mat_to_string(const TriMatrix& m);

// The ring T_n(q) with its unit group and radical precomputed. Immutable
// after construction and safe to share across readers.
struct RingContext {
  FieldTable field;
  int n = 0;
  int slots = 0;
  uint64_t ring_size = 0;            // q^slots
  std::array<uint64_t, kMaxSlots + 1> qpow{};
  std::vector<TriMatrix> elems;      // all ring elements, by code
  std::vector<uint64_t> units;       // sorted codes of invertible matrices
  std::vector<uint64_t> radical;     // sorted codes of radical elements
  std::vector<uint8_t> diag_mask;    // per code: bit i set iff entry (i,i) != 0

  uint8_t full_diag_mask() const { return static_cast<uint8_t>((1u << n) - 1); }
};

// Enumerates all q^{S_n} ring elements. Throws DimensionUnsupported outside
// 2 <= n <= 4.
RingContext ring_context(int n, const FieldTable& field);

}  // namespace trimat_geom
