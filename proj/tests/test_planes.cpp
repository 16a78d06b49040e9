#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "trimat_geom/planes.hpp"

using namespace trimat_geom;

namespace {

// Hand-built structures for negative controls.
IncidenceStructure toy(int points, std::vector<std::vector<int>> lines) {
  IncidenceStructure s;
  s.kind = "toy";
  for (int i = 0; i < points; ++i)
    s.points.push_back(Entity{i, "point", std::to_string(i), {}});
  for (size_t li = 0; li < lines.size(); ++li) {
    s.lines.push_back(Entity{static_cast<long long>(100 + li), "line", "", {}});
    std::sort(lines[li].begin(), lines[li].end());
    s.incidence.push_back(lines[li]);
  }
  return s;
}

}  // namespace

TEST_CASE("n=2 affine planes and closures") {
  for (int q : {2, 3}) {
    LineCensus c = build_line_census(2, q, 2);
    std::vector<PlaneKey> keys = all_plane_keys(c);
    REQUIRE(keys.size() == static_cast<size_t>(q + 1));
    std::set<std::vector<long long>> infinity_sets;
    for (const PlaneKey& key : keys) {
      IncidenceStructure p = build_affine_plane(c, key);
      CHECK(p.points.size() == static_cast<size_t>(q * q));
      CHECK(p.lines.size() == static_cast<size_t>(q * q + q));
      AxiomReport ar = check_affine_axioms(p);
      CHECK(ar.affine_ok());
      CHECK(ar.order == q);
      CHECK(ar.parallel_classes.size() == static_cast<size_t>(q + 1));
      for (auto& cls : ar.parallel_classes)
        CHECK(cls.size() == static_cast<size_t>(q));

      IncidenceStructure cl = projective_closure(c, p);
      CHECK(cl.points.size() == static_cast<size_t>(q * q + q + 1));
      CHECK(cl.lines.size() == static_cast<size_t>(q * q + q + 1));
      AxiomReport pr = check_projective_axioms(cl);
      CHECK(pr.projective_ok());
      CHECK(pr.order == q);

      std::vector<long long> infs;
      for (const Entity& e : cl.points)
        if (e.role == "infinity_point") infs.push_back(e.id);
      std::sort(infs.begin(), infs.end());
      infinity_sets.insert(infs);
      std::vector<long long> expect(c.type_a.begin(), c.type_a.end());
      CHECK(infs == expect);

      // The closure line is a nonuni member through exactly the new points.
      int cli = -1;
      for (size_t li = 0; li < cl.lines.size(); ++li)
        if (cl.lines[li].role == "closure_line") cli = static_cast<int>(li);
      REQUIRE(cli >= 0);
      CHECK(std::binary_search(c.nonuni.begin(), c.nonuni.end(),
                               static_cast<int>(cl.lines[cli].id)));
      std::vector<long long> on_line = cl.line_point_ids(cli);
      std::sort(on_line.begin(), on_line.end());
      CHECK(on_line == expect);
    }
    CHECK(infinity_sets.size() == 1);  // the unique projective closure
  }
}

TEST_CASE("n=3 q=2 planes, closures and 2-affine planes") {
  LineCensus c = build_line_census(3, 2, 2);
  std::vector<PlaneKey> keys = all_plane_keys(c);
  REQUIRE(keys.size() == 72);
  std::set<std::vector<long long>> seen;
  for (const PlaneKey& key : keys) {
    IncidenceStructure p = build_affine_plane(c, key);
    AxiomReport ar = check_affine_axioms(p);
    CHECK(ar.affine_ok());
    CHECK(ar.order == 2);
    std::vector<long long> sig;
    for (const Entity& e : p.points) sig.push_back(e.id);
    seen.insert(sig);

    IncidenceStructure cl = projective_closure(c, p);
    AxiomReport pr = check_projective_axioms(cl);
    CHECK(pr.projective_ok());
  }
  CHECK(seen.size() == 72);

  std::vector<TwoAffineKey> tkeys = all_2affine_keys(c);
  REQUIRE(tkeys.size() == 18);  // q(q+1)^2
  for (const TwoAffineKey& key : tkeys) {
    IncidenceStructure u = build_2affine_plane(c, key, true);
    CHECK(u.points.size() == 4);
    CHECK(u.lines.size() == 6);
    AxiomReport ar = check_affine_axioms(u);
    CHECK(ar.affine_ok());
    CHECK(ar.order == 2);
    IncidenceStructure e = build_2affine_plane(c, key, false);
    CHECK(u.incidence == e.incidence);
  }
}

TEST_CASE("selector validation") {
  LineCensus c2 = build_line_census(2, 2, 1);
  CHECK_THROWS_AS(build_affine_plane(c2, PlaneKey{SetLabel{false, 5}, {}, 0, 0}),
                  Error);
  LineCensus c3 = build_line_census(3, 2, 1);
  CHECK_THROWS_AS(build_2affine_plane(c3, TwoAffineKey{SetLabel{true, 0}, {3, 3, 3, 3}}),
                  Error);
  CHECK_THROWS_AS(build_2affine_plane(c2, TwoAffineKey{}), Error);
}

TEST_CASE("closure rejects structures that are not affine planes") {
  LineCensus c = build_line_census(2, 2, 1);
  IncidenceStructure p = build_affine_plane(c, PlaneKey{SetLabel{true, 0}, {}, 0, 0});
  IncidenceStructure broken = p;
  broken.incidence[0].pop_back();
  CHECK_THROWS_AS(projective_closure(c, broken), Error);
  IncidenceStructure wrong_kind = p;
  wrong_kind.kind = "classical_affine";
  CHECK_THROWS_AS(projective_closure(c, wrong_kind), Error);
}

TEST_CASE("negative controls for the axiom checkers") {
  // A repeated line (same point set, two ids) breaks A1 uniqueness.
  IncidenceStructure dup =
      toy(4, {{0, 1}, {0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}});
  AxiomReport r = check_affine_axioms(dup);
  CHECK_FALSE(r.a1);
  CHECK(!r.a1_failures.empty());

  // Three collinear points only: A3 fails.
  IncidenceStructure line3 = toy(3, {{0, 1, 2}});
  CHECK_FALSE(check_affine_axioms(line3).a3);

  // An affine plane is not a projective plane: parallel lines never meet.
  LineCensus c = build_line_census(2, 2, 1);
  IncidenceStructure p = build_affine_plane(c, PlaneKey{SetLabel{true, 0}, {}, 0, 0});
  AxiomReport pr = check_projective_axioms(p);
  CHECK_FALSE(pr.proj_lines);
  CHECK_FALSE(pr.projective_ok());
}

TEST_CASE("classical planes satisfy their axioms") {
  for (int q : {2, 3, 4}) {
    FieldTable f = field_make(q);
    IncidenceStructure ag = classical_affine_plane(f);
    CHECK(check_affine_axioms(ag).affine_ok());
    IncidenceStructure pg = classical_projective_plane(f);
    AxiomReport r = check_projective_axioms(pg);
    CHECK(r.projective_ok());
    CHECK(r.order == q);
  }
}

TEST_CASE("isomorphism search finds explicit bijections") {
  for (int q : {2, 3}) {
    FieldTable f = field_make(q);
    LineCensus c = build_line_census(2, q, 2);
    for (const PlaneKey& key : all_plane_keys(c)) {
      IncidenceStructure p = build_affine_plane(c, key);
      auto iso = isomorphism_to_classical(p, f);
      REQUIRE(iso.has_value());
      // Explicit witness: every line maps onto a line.
      IncidenceStructure ag = classical_affine_plane(f);
      std::set<std::vector<int>> ag_lines(ag.incidence.begin(), ag.incidence.end());
      for (const auto& row : p.incidence) {
        std::vector<int> img;
        for (int pi : row) img.push_back((*iso)[pi]);
        std::sort(img.begin(), img.end());
        CHECK(ag_lines.count(img) == 1);
      }
      IncidenceStructure cl = projective_closure(c, p);
      CHECK(isomorphism_to_classical(cl, f).has_value());
    }
  }
}

TEST_CASE("corrupted structures admit no bijection") {
  LineCensus c = build_line_census(2, 2, 1);
  IncidenceStructure p = build_affine_plane(c, PlaneKey{SetLabel{true, 0}, {}, 0, 0});
  IncidenceStructure bad = p;
  // Move one incidence: line 0 swaps a point for another.
  REQUIRE(bad.incidence[0].size() == 2);
  int off = bad.incidence[0][0] == 0 ? 1 : 0;
  for (int cand = 0; cand < 4; ++cand)
    if (!std::binary_search(bad.incidence[0].begin(), bad.incidence[0].end(), cand)) {
      bad.incidence[0][off] = cand;
      break;
    }
  std::sort(bad.incidence[0].begin(), bad.incidence[0].end());
  bad.incidence[0].erase(std::unique(bad.incidence[0].begin(), bad.incidence[0].end()),
                         bad.incidence[0].end());
  CHECK_FALSE(find_isomorphism(bad, classical_affine_plane(field_make(2))).has_value());
}

TEST_CASE("oversized isomorphism searches are rejected") {
  FieldTable f5 = field_make(5);
  IncidenceStructure ag = classical_affine_plane(f5);
  CHECK_THROWS_AS(find_isomorphism(ag, ag), Error);
  CHECK_THROWS_AS(isomorphism_to_classical(ag, f5), Error);
}

TEST_CASE("slot conditions hold") {
  for (auto [n, q] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    LineCensus c = build_line_census(n, q, 2);
    for (const CheckResult& r : check_slot_conditions(c)) {
      INFO(r.name);
      CHECK(r.pass);
    }
  }
}
