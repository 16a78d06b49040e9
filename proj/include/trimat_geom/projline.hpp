#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "trimat_geom/modspace.hpp"

namespace trimat_geom {

// Points of P(T_n(q)) and the order-q-type submodules fall into q+1 sets:
// the "first set" (y-side diagonal slot zero) and one k-set per field
// element k.
struct SetLabel {
  bool first = false;
  uint8_t k = 0;

  bool operator==(const SetLabel& o) const {
    return first == o.first && (first || k == o.k);
  }
  // Deterministic ordering: first set, then k ascending.
  int index() const { return first ? 0 : 1 + k; }
  std::string to_string() const {
    return first ? "first" : "k:" + std::to_string(static_cast<int>(k));
  }
};

// n=3 subset label: the (3,2)/(3,3) slots of the canonical generator pair,
// as (x32, x33, y32, y33). All zeros for n=2.
using SubsetLabel = std::array<uint8_t, 4>;

std::string subset_to_string(const SubsetLabel& s);

struct EntityInfo {
  SetLabel set;
  SubsetLabel subset{};
  int family = -1;          // which generator template produced it
  uint64_t listed_gen = 0; // normalized generator pair code
};

// A generator family entry: one explicitly listed generator together with
// its set/subset labels.
struct FamilyEntry {
  uint64_t gen = 0;
  SetLabel set;
  SubsetLabel subset{};
  int family = -1;
};

// The explicit generator families for n=2 and n=3:
//  - points of the projective line,
//  - free cyclic submodules generated only by outliers,
//  - non-free cyclic submodules contained in no such submodule ("shielded").
std::vector<FamilyEntry> point_generator_family(const RingContext& ctx);
std::vector<FamilyEntry> nonuni_fcs_generator_family(const RingContext& ctx);
std::vector<FamilyEntry> shielded_generator_family(const RingContext& ctx);

// Full census of the projective line machinery for one (n, q).
struct LineCensus {
  int n = 0, q = 0;
  RingContext ctx;
  ModuleCensus mods;

  std::vector<int> points;    // free, generated by a unimodular pair
  std::vector<int> nonuni;    // free, generated only by outliers
  std::vector<int> nonfree;   // everything else
  std::vector<int> shielded;  // non-free, contained in no nonuni member
  std::vector<int> type_a;    // n=2: order-q submodules with both entries in J
  std::vector<int> type_b;    // n=2: the other order-q submodules
  std::vector<int> infinity;  // the q+1 points-at-infinity submodules

  bool labeled = false;  // set/subset labels assigned (n in {2,3})
  std::unordered_map<int, EntityInfo> point_info;
  std::unordered_map<int, EntityInfo> nonuni_info;
  std::unordered_map<int, EntityInfo> shielded_info;
  // For each shielded or infinity submodule: sorted ids of the points of the
  // line containing it. A cyclic submodule lies inside another submodule iff
  // its generator is one of that submodule's elements.
  std::unordered_map<int, std::vector<int>> points_containing;

  std::vector<std::string> anomalies;

  const Submodule& sub(int id) const { return mods.at(id); }
  std::vector<SubsetLabel> subsets_of(const SetLabel& set) const;
};

LineCensus build_line_census(int n, int q, int workers = 1,
                             int max_q = kDefaultMaxQ);

// n=2 order-q classification: type (a) has both generator entries in the
// radical, type (b) does not. Type (b) splits into the first set and q
// k-sets of q^2 submodules each.
struct OrderQClassification {
  std::vector<int> type_a;
  std::vector<int> type_b;
  std::vector<std::pair<SetLabel, std::vector<int>>> type_b_sets;
};
OrderQClassification classify_order_q_n2(const LineCensus& census);

// Closed-form freeness test for non-unimodular pairs, n=2: free iff
// x22 = y22 = 0 and (x11,y11), (x21,y21) are linearly independent, spelled
// out as four branches on the vanishing pattern of x11, y11.
bool fast_free_nonuni_n2(const FieldTable& f, const ModPair& g);

// n=3 closed-form test, evaluated exactly as tabulated. The tabulated
// criterion is internally inconsistent (its leading clause repeats
// "x22 = y22 = 0", making the x22 != 0 / y22 != 0 branches unreachable, and
// branch 2(d) tests x-slots where y-slots are expected), so this function is
// expected to disagree with is_free on part of the pair space; see
// fast_free_nonuni_n3_fixed.
bool fast_free_nonuni_n3(const FieldTable& f, const ModPair& g);

// Repaired criterion, derived from the row-independence characterisation and
// confirmed by exhaustive comparison against is_free: leading clause
// (x22 = y22 = 0 or x33 = y33 = 0), branch (a) completed with the
// (x32,x33,y32,y33) != 0 tail, branch 1(b) with y-slots, branch 2(d) with
// y-slots.
bool fast_free_nonuni_n3_fixed(const FieldTable& f, const ModPair& g);

struct FastPathDisagreement {
  uint64_t pair = 0;
  bool fast = false;   // tabulated verdict
  bool truth = false;  // is_free verdict
};

struct FastPathReport {
  int n = 0, q = 0;
  uint64_t nonuni_pairs_checked = 0;
  uint64_t printed_disagreement_count = 0;
  uint64_t fixed_disagreement_count = 0;
  std::vector<FastPathDisagreement> printed_disagreements;  // capped
  bool truncated = false;
};

FastPathReport compare_fast_paths(const RingContext& ctx,
                                  size_t max_listed = 1000);

}  // namespace trimat_geom
