#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "trimat_geom/export_io.hpp"

using namespace trimat_geom;

TEST_CASE("structure json round-trips to an equal structure") {
  LineCensus c = build_line_census(2, 2, 2);
  for (const PlaneKey& key : all_plane_keys(c)) {
    IncidenceStructure p = build_affine_plane(c, key);
    AxiomReport ar = check_affine_axioms(p);
    nlohmann::json doc = structure_to_json(p, &ar);
    IncidenceStructure back = structure_from_json(doc);
    CHECK(back == p);
    IncidenceStructure cl = projective_closure(c, p);
    CHECK(structure_from_json(structure_to_json(cl, nullptr)) == cl);
  }
  LineCensus c3 = build_line_census(3, 2, 2);
  for (const TwoAffineKey& key : all_2affine_keys(c3)) {
    IncidenceStructure t = build_2affine_plane(c3, key);
    CHECK(structure_from_json(structure_to_json(t, nullptr)) == t);
  }
}

TEST_CASE("export document carries schema, entities, structures and counts") {
  LineCensus c = build_line_census(2, 2, 1);
  std::vector<IncidenceStructure> planes;
  std::vector<AxiomReport> reports;
  for (const PlaneKey& key : all_plane_keys(c)) {
    planes.push_back(build_affine_plane(c, key));
    reports.push_back(check_affine_axioms(planes.back()));
  }
  nlohmann::json doc = export_document(c, "planes", planes, reports);
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["n"] == 2);
  CHECK(doc["q"] == 2);
  CHECK(doc["structures"].size() == 3);
  CHECK(doc["counts"]["points"]["enumerated"] == 18);
  CHECK(doc["counts"]["points"]["match"] == true);
  for (const auto& s : doc["structures"]) {
    CHECK(s["axiom_report"]["a1"] == true);
    CHECK(s["points"].size() == 4);
    CHECK(s["lines"].size() == 6);
    IncidenceStructure back = structure_from_json(s);
    CHECK(back.points.size() == 4);
  }
}

TEST_CASE("dot export shows the line graph") {
  LineCensus c = build_line_census(2, 2, 1);
  std::string dot = line_graph_to_dot(c);
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 20);
  size_t ellipses = 0, boxes = 0, pos = 0;
  while ((pos = dot.find("shape=ellipse", pos)) != std::string::npos) {
    ++ellipses;
    pos += 1;
  }
  pos = 0;
  while ((pos = dot.find("shape=box", pos)) != std::string::npos) {
    ++boxes;
    pos += 1;
  }
  CHECK(ellipses == 18);
  CHECK(boxes == 3);
}

TEST_CASE("figure labels reproduce the reference q=2 drawing") {
  LineCensus c = build_line_census(2, 2, 1);
  // The radical carries labels {0, 6}.
  std::set<int> radical_labels;
  for (uint64_t r : c.ctx.radical)
    radical_labels.insert(figure_label_q2(r));
  CHECK(radical_labels == std::set<int>{0, 6});

  auto labels_of = [&](int id) {
    std::set<std::pair<int, int>> out;
    for (uint64_t e : c.sub(id).elements) {
      if (e == 0) continue;
      out.insert({figure_label_q2(e / c.ctx.ring_size),
                  figure_label_q2(e % c.ctx.ring_size)});
    }
    return out;
  };

  // The three affine planes' point sets, as labeled in the drawing.
  std::set<std::set<std::pair<int, int>>> plane_sets;
  for (const PlaneKey& key : all_plane_keys(c)) {
    IncidenceStructure p = build_affine_plane(c, key);
    std::set<std::pair<int, int>> labels;
    for (const Entity& e : p.points) {
      auto l = labels_of(static_cast<int>(e.id));
      REQUIRE(l.size() == 1);  // order-2 submodule: one nonzero pair
      labels.insert(*l.begin());
    }
    plane_sets.insert(labels);
  }
  std::set<std::set<std::pair<int, int>>> expected{
      {{3, 0}, {3, 6}, {5, 0}, {5, 6}},
      {{3, 3}, {3, 5}, {5, 3}, {5, 5}},
      {{6, 3}, {6, 5}, {0, 3}, {0, 5}}};
  CHECK(plane_sets == expected);

  // The closure line comprises the points (6,0), (6,6), (0,6).
  std::set<std::pair<int, int>> closure_pts;
  for (int a : c.type_a) {
    auto l = labels_of(a);
    REQUIRE(l.size() == 1);
    closure_pts.insert(*l.begin());
  }
  CHECK(closure_pts == std::set<std::pair<int, int>>{{6, 0}, {6, 6}, {0, 6}});
}

TEST_CASE("counts render to csv and text") {
  LineCensus c = build_line_census(2, 2, 1);
  std::vector<CountRow> rows = compute_counts(c);
  std::string csv = counts_to_csv(rows);
  CHECK(csv.rfind("name,formula,enumerated,match\n", 0) == 0);
  CHECK(csv.find("points,18,18,true") != std::string::npos);
  std::string text = counts_to_text(rows);
  CHECK(text.find("MISMATCH") == std::string::npos);
}

TEST_CASE("exports are byte-identical across worker counts") {
  LineCensus c1 = build_line_census(3, 2, 1);
  LineCensus c2 = build_line_census(3, 2, 3);
  std::vector<IncidenceStructure> p1, p2;
  std::vector<AxiomReport> r1, r2;
  for (const PlaneKey& key : all_plane_keys(c1)) {
    p1.push_back(build_affine_plane(c1, key));
    r1.push_back(check_affine_axioms(p1.back()));
  }
  for (const PlaneKey& key : all_plane_keys(c2)) {
    p2.push_back(build_affine_plane(c2, key));
    r2.push_back(check_affine_axioms(p2.back()));
  }
  CHECK(export_document(c1, "planes", p1, r1).dump() ==
        export_document(c2, "planes", p2, r2).dump());
  CHECK(line_graph_to_dot(c1) == line_graph_to_dot(c2));
}

TEST_CASE("verify report renders") {
  LineCensus c = build_line_census(2, 2, 1);
  VerifyReport rep = run_verify(c);
  CHECK(rep.ok());
  std::string text = verify_to_text(rep);
  CHECK(text.find("OK") != std::string::npos);
  nlohmann::json doc = verify_to_json(rep);
  CHECK(doc["ok"] == true);
  CHECK(doc["fastpath"]["tabulated_disagreements"] == 0);
}
