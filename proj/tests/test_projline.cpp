#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "trimat_geom/projline.hpp"

using namespace trimat_geom;

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("census counts for n=2") {
  for (int q : {2, 3, 4, 5}) {
    LineCensus c = build_line_census(2, q, 2);
    CHECK(c.anomalies.empty());
    CHECK(c.points.size() == static_cast<size_t>(q * (q + 1) * (q + 1)));
    CHECK(c.nonuni.size() == static_cast<size_t>(q + 1));
    CHECK(c.shielded.size() == static_cast<size_t>(q * q * (q + 1)));
    CHECK(c.type_a.size() == static_cast<size_t>(q + 1));
    CHECK(c.type_b == c.shielded);
    CHECK(c.infinity == c.type_a);
  }
}

TEST_CASE("census counts for n=3") {
  for (int q : {2, 3}) {
    LineCensus c = build_line_census(3, q, 2);
    CHECK(c.anomalies.empty());
    CHECK(c.points.size() == static_cast<size_t>(ipow(q + 1, 3) * ipow(q, 3)));
    CHECK(c.nonuni.size() ==
          static_cast<size_t>((q + 1) * (q + 1) * (2 * q * q + q + 1)));
    CHECK(c.shielded.size() ==
          static_cast<size_t>((q + 1) * (q + 1) * ipow(q, 5)));
    CHECK(c.infinity.size() == static_cast<size_t>(q + 1));
  }
}

TEST_CASE("listed generator families reproduce the census") {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    LineCensus c = build_line_census(n, q, 2);
    auto ids_of = [&](const std::vector<FamilyEntry>& fam) {
      std::vector<int> ids;
      for (const FamilyEntry& e : fam)
        ids.push_back(c.mods.id_of_generator(c.ctx, e.gen));
      std::sort(ids.begin(), ids.end());
      return ids;
    };
    std::vector<int> pts = ids_of(point_generator_family(c.ctx));
    CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
    CHECK(pts == c.points);
    std::vector<int> nu = ids_of(nonuni_fcs_generator_family(c.ctx));
    CHECK(std::adjacent_find(nu.begin(), nu.end()) == nu.end());
    CHECK(nu == c.nonuni);
    std::vector<int> sh = ids_of(shielded_generator_family(c.ctx));
    CHECK(std::adjacent_find(sh.begin(), sh.end()) == sh.end());
    CHECK(sh == c.shielded);
  }
}

TEST_CASE("point partition sizes") {
  LineCensus c = build_line_census(3, 2, 2);
  std::map<int, std::map<SubsetLabel, int>> partition;
  for (int id : c.points) {
    const EntityInfo& info = c.point_info.at(id);
    ++partition[info.set.index()][info.subset];
  }
  REQUIRE(partition.size() == 3);  // q+1 sets
  for (auto& [set, subsets] : partition) {
    CHECK(subsets.size() == 6);  // q^2+q subsets
    for (auto& [sub, count] : subsets) CHECK(count == 12);  // q^2(q+1)
  }
}

TEST_CASE("order-q classification for n=2") {
  LineCensus c = build_line_census(2, 2, 1);
  OrderQClassification cls = classify_order_q_n2(c);
  CHECK(cls.type_a.size() == 3);
  CHECK(cls.type_b.size() == 12);
  REQUIRE(cls.type_b_sets.size() == 3);
  for (auto& [set, ids] : cls.type_b_sets) CHECK(ids.size() == 4);  // q^2

  // type (a) submodules sit inside every nonuni member...
  for (int a : cls.type_a)
    for (int nu : c.nonuni)
      CHECK(submodule_contains(c.sub(nu), c.sub(a)));
  // ...so they are never shielded.
  for (int a : cls.type_a)
    CHECK_FALSE(std::binary_search(c.shielded.begin(), c.shielded.end(), a));

  LineCensus c3 = build_line_census(3, 2, 1);
  CHECK_THROWS_AS(classify_order_q_n2(c3), Error);
}

TEST_CASE("type (b) members stay within their own set of points") {
  LineCensus c = build_line_census(2, 3, 2);
  for (int id : c.shielded) {
    const EntityInfo& info = c.shielded_info.at(id);
    const std::vector<int>& owners = c.points_containing.at(id);
    CHECK(owners.size() == static_cast<size_t>(c.q + 1));
    for (int p : owners) CHECK(c.point_info.at(p).set == info.set);
  }
}

TEST_CASE("closed-form freeness test for n=2 agrees everywhere") {
  for (int q : {2, 3, 4}) {
    RingContext ctx = ring_context(2, field_make(q));
    FastPathReport r = compare_fast_paths(ctx);
    CHECK(r.printed_disagreement_count == 0);
    CHECK(r.fixed_disagreement_count == 0);
    CHECK(r.nonuni_pairs_checked > 0);
  }
}

TEST_CASE("n=3 tabulated criterion disagrees, repaired criterion does not") {
  RingContext ctx = ring_context(3, field_make(2));
  FastPathReport r = compare_fast_paths(ctx);
  CHECK(r.printed_disagreement_count > 0);
  CHECK(r.fixed_disagreement_count == 0);
  // Every disagreement involves a pair the leading clause wrongly excludes
  // or branch (a)'s missing tail wrongly admits.
  for (const FastPathDisagreement& d : r.printed_disagreements) {
    ModPair g = pair_decode(ctx, d.pair);
    bool lead22 = g.x.at(1, 1) == 0 && g.y.at(1, 1) == 0;
    if (!d.fast && d.truth) CHECK_FALSE(lead22);  // x33=y33=0 route missed
    if (d.fast && !d.truth) CHECK(lead22);        // missing tail on 3(a)
  }
}

TEST_CASE("repaired criterion equals is_free over all non-unimodular pairs, q=3") {
  RingContext ctx = ring_context(3, field_make(3));
  const uint64_t npairs = ctx.ring_size * ctx.ring_size;
  uint64_t checked = 0;
  for (uint64_t code = 0; code < npairs; code += 7) {  // deterministic stride
    if (is_unimodular_code(ctx, code)) continue;
    ModPair g = pair_decode(ctx, code);
    CHECK(fast_free_nonuni_n3_fixed(ctx.field, g) == is_free(ctx, g));
    ++checked;
  }
  CHECK(checked > 10000);
}

TEST_CASE("nonuni generators are outliers and count correctly") {
  for (int q : {2, 3}) {
    LineCensus c = build_line_census(2, q, 1);
    std::vector<Submodule> line;
    for (int id : c.points) line.push_back(c.sub(id));
    long long outlier_gens = 0;
    const uint64_t npairs = c.ctx.ring_size * c.ctx.ring_size;
    for (uint64_t code = 0; code < npairs; ++code) {
      ModPair g = pair_decode(c.ctx, code);
      if (is_outlier(c.ctx, line, g) && is_free(c.ctx, g)) ++outlier_gens;
    }
    CHECK(outlier_gens == static_cast<long long>(q - 1) * (q - 1) * q * (q + 1));
  }
}

TEST_CASE("infinity submodules for n=3 have order q and sit inside every nonuni closure line") {
  LineCensus c = build_line_census(3, 2, 2);
  for (int inf : c.infinity) {
    CHECK(c.sub(inf).order == static_cast<uint64_t>(c.q));
    CHECK_FALSE(c.sub(inf).is_free);
    CHECK_FALSE(
        std::binary_search(c.shielded.begin(), c.shielded.end(), inf));
  }
}

TEST_CASE("set labels parse and order") {
  CHECK(SetLabel{true, 0}.to_string() == "first");
  CHECK(SetLabel{false, 2}.to_string() == "k:2");
  CHECK(SetLabel{true, 0}.index() == 0);
  CHECK(SetLabel{false, 0}.index() == 1);
  CHECK(subset_to_string({0, 1, 2, 0}) == "(0,1,2,0)");
}

TEST_CASE("n=4 keeps raw enumeration but has no labeled machinery") {
  RingContext ctx = ring_context(4, field_make(2));
  CHECK(ctx.ring_size == 1024);
  CHECK(ctx.units.size() == 64);
  CHECK(ctx.radical.size() == 64);
  CHECK_THROWS_AS(point_generator_family(ctx), Error);
  CHECK_THROWS_AS(nonuni_fcs_generator_family(ctx), Error);
  CHECK_THROWS_AS(compare_fast_paths(ctx), Error);
}

TEST_CASE("shielded filter agrees with merge-scan containment") {
  for (auto [n, q] : {std::pair{2, 3}, {3, 2}}) {
    LineCensus c = build_line_census(n, q, 2);
    std::vector<int> recomputed;
    for (int id : c.nonfree) {
      bool covered = false;
      for (int nu : c.nonuni)
        if (submodule_contains(c.sub(nu), c.sub(id))) {
          covered = true;
          break;
        }
      if (!covered) recomputed.push_back(id);
    }
    CHECK(recomputed == c.shielded);
    // The reverse relation too: points_containing matches merge-scan.
    for (int id : c.shielded)
      for (int p : c.points) {
        bool via_map = std::binary_search(c.points_containing.at(id).begin(),
                                          c.points_containing.at(id).end(), p);
        CHECK(via_map == submodule_contains(c.sub(p), c.sub(id)));
      }
  }
}

TEST_CASE("repaired criterion accepts every listed nonuni generator") {
  for (int q : {2, 3}) {
    RingContext ctx = ring_context(3, field_make(q));
    for (const FamilyEntry& e : nonuni_fcs_generator_family(ctx)) {
      ModPair g = pair_decode(ctx, e.gen);
      CHECK_FALSE(is_unimodular(g));
      CHECK(fast_free_nonuni_n3_fixed(ctx.field, g));
      CHECK(is_free(ctx, g));
    }
  }
}

TEST_CASE("freeness requires a nonzero (1,1) slot") {
  RingContext ctx = ring_context(3, field_make(2));
  const uint64_t npairs = ctx.ring_size * ctx.ring_size;
  for (uint64_t code = 0; code < npairs; ++code) {
    ModPair g = pair_decode(ctx, code);
    if (g.x.at(0, 0) == 0 && g.y.at(0, 0) == 0) {
      CHECK_FALSE(fast_free_nonuni_n3_fixed(ctx.field, g));
      CHECK_FALSE(is_free(ctx, g));
    }
  }
}
