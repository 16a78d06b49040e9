#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trimat_geom/trimat.hpp"

namespace trimat_geom {

// An element (X, Y) of the free left module of rank 2 over T_n(q).
struct ModPair {
  TriMatrix x, y;
};

// Packed pair code = code(x) * q^{S_n} + code(y), a bijection onto
// {0, ..., q^{2 S_n} - 1}.
uint64_t pair_code(const RingContext& ctx, const ModPair& g);
ModPair pair_decode(const RingContext& ctx, uint64_t code);
std::string pair_to_string(const RingContext& ctx, uint64_t code);

// (X, Y) is unimodular iff for every diagonal index i, x_ii != 0 or
// y_ii != 0.
bool is_unimodular(const ModPair& g);
bool is_unimodular_code(const RingContext& ctx, uint64_t code);

// Pair code of (A*x, A*y).
uint64_t action_code(const RingContext& ctx, const TriMatrix& a,
                     const TriMatrix& x, const TriMatrix& y);

// The cyclic submodule T_n(q)(X, Y) = {A(X,Y)} as a canonical sorted set of
// pair codes.
struct Submodule {
  int n = 0, q = 0;
  std::vector<uint64_t> elements;     // sorted, deduplicated pair codes
  uint64_t canonical_generator = 0;   // minimal pair code among generators
  uint64_t order = 0;                 // elements.size()
  bool is_free = false;               // order == q^{S_n}
  bool is_unimodular_generated = false;
  bool is_nonunimodular_free = false;

  bool has_element(uint64_t code) const;
};

// Order of T_n(q)(x, y) without enumerating it. Row i of A(x, y) depends only
// on row i of A and ranges over the span of the first i rows of the block
// matrix (x|y), so the order is the product over i of q^rank(rows 1..i).
uint64_t submodule_order(const RingContext& ctx, const ModPair& g);

// The annihilator {A : A*x = 0 and A*y = 0} is trivial iff for every i the
// first i rows of (x|y) are linearly independent, which is exactly
// submodule_order == q^{S_n}.
bool is_free(const RingContext& ctx, const ModPair& g);

// elements = {A(x,y) : A in T_n(q)}, deduplicated and sorted, with the
// canonical generator and classification flags filled in.
Submodule cyclic_submodule(const RingContext& ctx, const ModPair& g);

// b is a subset of a (merge scan over the sorted element lists).
bool submodule_contains(const Submodule& a, const Submodule& b);

struct GeneratorOrbit {
  std::vector<uint64_t> pairs;  // sorted codes of {U(x,y) : U unit}
  bool complete = false;        // true iff the submodule is free, in which
                                // case the orbit is the full generator set
};
GeneratorOrbit generator_orbit(const RingContext& ctx, const ModPair& g);

// True iff no point of the given projective line contains (x, y).
bool is_outlier(const RingContext& ctx, const std::vector<Submodule>& line,
                const ModPair& g);

// Every distinct cyclic submodule of the module, deduplicated globally.
// IDs index `subs`, which is sorted by element list (lexicographically), so
// the assignment is deterministic regardless of worker count.
struct ModuleCensus {
  int n = 0, q = 0;
  uint64_t ring_size = 0;
  std::vector<Submodule> subs;

  const Submodule& at(int id) const { return subs[id]; }
  int size() const { return static_cast<int>(subs.size()); }

  // ID of the submodule with exactly these elements, or -1.
  int find_elements(const std::vector<uint64_t>& elements) const;
  // ID of the cyclic submodule generated by the pair with this code.
  int id_of_generator(const RingContext& ctx, uint64_t pair) const;

 private:
  friend ModuleCensus enumerate_submodules(const RingContext&, int);
  std::unordered_map<uint64_t, std::vector<int>> by_hash_;
};

// Sweeps all q^{2 S_n} pairs in ascending code order, skipping pairs already
// recorded as generators of a known submodule (unit-orbit pruning). The
// sweep is partitioned across workers; results are merged and IDs assigned
// in fingerprint-sorted order, so the census is identical for any worker
// count. Throws EnumerationTooLarge when the pair space is impractical.
ModuleCensus enumerate_submodules(const RingContext& ctx, int workers = 1);

uint64_t fingerprint_elements(const std::vector<uint64_t>& elements);

}  // namespace trimat_geom
