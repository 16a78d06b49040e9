#include "trimat_geom/export_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace trimat_geom {

namespace {

using nlohmann::json;

const char* kPalette[] = {"red",    "green",  "blue",   "orange", "purple",
                          "brown",  "cyan",   "magenta", "gold",  "navy",
                          "teal",   "maroon", "olive",  "salmon", "indigo",
                          "turquoise", "gray"};

json entity_to_json(const LineCensus& census, int id) {
  const Submodule& s = census.sub(id);
  json e;
  e["id"] = id;
  json labels = json::object();
  std::string role = "submodule";
  if (std::binary_search(census.points.begin(), census.points.end(), id))
    role = "point";
  else if (std::binary_search(census.nonuni.begin(), census.nonuni.end(), id))
    role = "nonuni_fcs";
  else if (std::binary_search(census.shielded.begin(), census.shielded.end(), id))
    role = "shielded";
  e["role"] = role;
  ModPair g = pair_decode(census.ctx, s.canonical_generator);
  e["canonical_generator"] = {{"x", matrix_to_json(g.x)}, {"y", matrix_to_json(g.y)}};
  labels["order"] = s.order;
  labels["free"] = s.is_free;
  auto set_labels = [&](const EntityInfo& info) {
    labels["set"] = info.set.to_string();
    if (census.n == 3) labels["subset"] = subset_to_string(info.subset);
  };
  if (auto it = census.point_info.find(id); it != census.point_info.end())
    set_labels(it->second);
  if (auto it = census.nonuni_info.find(id); it != census.nonuni_info.end())
    labels["set"] = it->second.set.to_string();
  if (auto it = census.shielded_info.find(id); it != census.shielded_info.end())
    set_labels(it->second);
  if (std::binary_search(census.infinity.begin(), census.infinity.end(), id))
    labels["at_infinity"] = true;
  if (census.n == 2 && census.q == 2) {
    labels["fig_label"] = std::to_string(figure_label_q2(
                              s.canonical_generator / census.ctx.ring_size)) +
                          "," +
                          std::to_string(figure_label_q2(
                              s.canonical_generator % census.ctx.ring_size));
  }
  e["labels"] = labels;
  return e;
}

}  // namespace

int figure_label_q2(uint64_t mat_code) {
  // Indexed by the base-2 slot code ((1,1),(2,1),(2,2) digits).
  static const int table[8] = {0, 2, 6, 4, 3, 1, 5, 7};
  if (mat_code > 7)
    throw Error(ErrorKind::BadInput, "figure labels exist only for T(2)");
  return table[mat_code];
}

json matrix_to_json(const TriMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(static_cast<int>(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json counts_to_json(const std::vector<CountRow>& rows) {
  json counts = json::object();
  for (const CountRow& r : rows) {
    json entry;
    if (r.has_formula)
      entry["formula"] = r.formula;
    else
      entry["formula"] = nullptr;
    entry["enumerated"] = r.enumerated;
    entry["match"] = r.match;
    counts[r.name] = entry;
  }
  return counts;
}

std::string counts_to_csv(const std::vector<CountRow>& rows) {
  std::string out = "name,formula,enumerated,match\n";
  for (const CountRow& r : rows) {
    out += r.name + ",";
    out += r.has_formula ? std::to_string(r.formula) : std::string();
    out += "," + std::to_string(r.enumerated) + ",";
    out += r.match ? "true" : "false";
    out += "\n";
  }
  return out;
}

std::string counts_to_text(const std::vector<CountRow>& rows) {
  size_t w = 4;
  for (const CountRow& r : rows) w = std::max(w, r.name.size());
  std::ostringstream out;
  for (const CountRow& r : rows) {
    out << r.name << std::string(w - r.name.size() + 2, ' ');
    if (r.has_formula)
      out << r.formula << " / " << r.enumerated << "  "
          << (r.match ? "match" : "MISMATCH");
    else
      out << "- / " << r.enumerated;
    out << "\n";
  }
  return out.str();
}

json entities_to_json(const LineCensus& census, const std::vector<int>& ids) {
  json arr = json::array();
  for (int id : ids) arr.push_back(entity_to_json(census, id));
  return arr;
}

std::string entities_to_csv(const LineCensus& census, const std::vector<int>& ids) {
  std::string out = "id,order,free,set,subset,generator\n";
  for (int id : ids) {
    const Submodule& s = census.sub(id);
    std::string set, subset;
    if (auto it = census.point_info.find(id); it != census.point_info.end()) {
      set = it->second.set.to_string();
      subset = subset_to_string(it->second.subset);
    } else if (auto it2 = census.shielded_info.find(id);
               it2 != census.shielded_info.end()) {
      set = it2->second.set.to_string();
      subset = subset_to_string(it2->second.subset);
    }
    out += std::to_string(id) + "," + std::to_string(s.order) + "," +
           (s.is_free ? "true" : "false") + "," + set + "," +
           (census.n == 3 ? subset : std::string()) + ",\"" +
           pair_to_string(census.ctx, s.canonical_generator) + "\"\n";
  }
  return out;
}

std::string entities_to_text(const LineCensus& census, const std::vector<int>& ids) {
  std::ostringstream out;
  for (int id : ids) {
    const Submodule& s = census.sub(id);
    out << id << "  order=" << s.order << (s.is_free ? " free" : "")
        << "  " << pair_to_string(census.ctx, s.canonical_generator);
    if (auto it = census.point_info.find(id); it != census.point_info.end()) {
      out << "  set=" << it->second.set.to_string();
      if (census.n == 3) out << " subset=" << subset_to_string(it->second.subset);
    } else if (auto it2 = census.shielded_info.find(id);
               it2 != census.shielded_info.end()) {
      out << "  set=" << it2->second.set.to_string();
      if (census.n == 3) out << " subset=" << subset_to_string(it2->second.subset);
    }
    out << "\n";
  }
  return out.str();
}

json structure_to_json(const IncidenceStructure& s, const AxiomReport* report) {
  json doc;
  doc["kind"] = s.kind;
  doc["n"] = s.n;
  doc["q"] = s.q;
  json points = json::array();
  for (const Entity& e : s.points) {
    json p;
    p["id"] = e.id;
    p["role"] = e.role;
    p["label"] = e.label;
    if (!e.members.empty()) p["members"] = e.members;
    points.push_back(p);
  }
  doc["points"] = points;
  json lines = json::array();
  for (size_t li = 0; li < s.lines.size(); ++li) {
    json l;
    l["id"] = s.lines[li].id;
    l["role"] = s.lines[li].role;
    l["label"] = s.lines[li].label;
    if (!s.lines[li].members.empty()) l["members"] = s.lines[li].members;
    json ids = json::array();
    for (int pi : s.incidence[li]) ids.push_back(s.points[pi].id);
    l["point_ids"] = ids;
    lines.push_back(l);
  }
  doc["lines"] = lines;
  if (report) {
    json ar;
    ar["a1"] = report->a1;
    ar["a2"] = report->a2;
    ar["a3"] = report->a3;
    ar["order"] = report->order;
    ar["uniform_lines"] = report->uniform_lines;
    ar["counts_ok"] = report->counts_ok;
    ar["parallel_classes"] = report->parallel_classes.size();
    ar["projective"] = {{"two_points_one_line", report->proj_points},
                        {"two_lines_one_point", report->proj_lines},
                        {"quadrilateral", report->proj_quad}};
    doc["axiom_report"] = ar;
  }
  return doc;
}

IncidenceStructure structure_from_json(const json& doc) {
  IncidenceStructure s;
  s.kind = doc.at("kind").get<std::string>();
  if (doc.contains("n")) s.n = doc.at("n").get<int>();
  if (doc.contains("q")) s.q = doc.at("q").get<int>();
  std::map<long long, int> index;
  for (const json& p : doc.at("points")) {
    Entity e;
    e.id = p.at("id").get<long long>();
    e.role = p.at("role").get<std::string>();
    e.label = p.at("label").get<std::string>();
    if (p.contains("members")) e.members = p.at("members").get<std::vector<int>>();
    index[e.id] = static_cast<int>(s.points.size());
    s.points.push_back(std::move(e));
  }
  for (const json& l : doc.at("lines")) {
    Entity e;
    e.id = l.at("id").get<long long>();
    e.role = l.at("role").get<std::string>();
    e.label = l.at("label").get<std::string>();
    if (l.contains("members")) e.members = l.at("members").get<std::vector<int>>();
    std::vector<int> row;
    for (const json& pid : l.at("point_ids"))
      row.push_back(index.at(pid.get<long long>()));
    std::sort(row.begin(), row.end());
    s.lines.push_back(std::move(e));
    s.incidence.push_back(std::move(row));
  }
  return s;
}

json export_document(const LineCensus& census, const std::string& kind,
                     const std::vector<IncidenceStructure>& structures,
                     const std::vector<AxiomReport>& reports) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = census.n;
  doc["q"] = census.q;
  doc["kind"] = kind;
  std::vector<int> ids;
  if (kind == "points")
    ids = census.points;
  else if (kind == "nonuni-fcs")
    ids = census.nonuni;
  else if (kind == "shielded")
    ids = census.shielded;
  else {
    std::set<int> used;
    for (const IncidenceStructure& s : structures) {
      for (const Entity& e : s.points) {
        if (e.members.empty())
          used.insert(static_cast<int>(e.id));
        else
          used.insert(e.members.begin(), e.members.end());
      }
      for (const Entity& e : s.lines) {
        if (e.members.empty())
          used.insert(static_cast<int>(e.id));
        else
          used.insert(e.members.begin(), e.members.end());
      }
    }
    ids.assign(used.begin(), used.end());
  }
  doc["entities"] = entities_to_json(census, ids);
  json arr = json::array();
  for (size_t i = 0; i < structures.size(); ++i) {
    json s = structure_to_json(structures[i],
                               i < reports.size() ? &reports[i] : nullptr);
    s["id"] = i;
    arr.push_back(s);
  }
  doc["structures"] = arr;
  doc["counts"] = counts_to_json(compute_counts(census));
  return doc;
}

json fastpath_to_json(const FastPathReport& r) {
  json doc;
  doc["n"] = r.n;
  doc["q"] = r.q;
  doc["nonuni_pairs_checked"] = r.nonuni_pairs_checked;
  doc["tabulated_disagreements"] = r.printed_disagreement_count;
  doc["repaired_disagreements"] = r.fixed_disagreement_count;
  doc["truncated"] = r.truncated;
  json list = json::array();
  for (const FastPathDisagreement& d : r.printed_disagreements) {
    json e;
    e["pair"] = d.pair;
    e["tabulated"] = d.fast;
    e["is_free"] = d.truth;
    list.push_back(e);
  }
  doc["disagreements"] = list;
  return doc;
}

json verify_to_json(const VerifyReport& r) {
  json doc;
  doc["n"] = r.n;
  doc["q"] = r.q;
  doc["ok"] = r.ok();
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["warning_only"] = c.warn_only;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  doc["checks"] = checks;
  doc["fastpath"] = fastpath_to_json(r.fastpath);
  return doc;
}

std::string verify_to_text(const VerifyReport& r) {
  std::ostringstream out;
  out << "verify n=" << r.n << " q=" << r.q << "\n";
  for (const CheckResult& c : r.checks) {
    out << (c.pass ? "  [pass" : c.warn_only ? "  [warn" : "  [FAIL");
    out << "] " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << (r.ok() ? "OK" : "FAILED") << "\n";
  return out.str();
}

std::string line_graph_to_dot(const LineCensus& census) {
  std::ostringstream out;
  out << "graph projective_line {\n";
  out << "  overlap=false;\n";
  std::vector<int> subs = census.points;
  subs.insert(subs.end(), census.nonuni.begin(), census.nonuni.end());
  std::sort(subs.begin(), subs.end());
  // Parallel lines of one plane share a point at infinity; color by
  // (set, infinity point) so parallel lines share a color.
  auto class_of = [&](int point_id) {
    int idx = 0;
    for (size_t i = 0; i < census.infinity.size(); ++i) {
      const std::vector<int>& owners = census.points_containing.at(census.infinity[i]);
      if (std::binary_search(owners.begin(), owners.end(), point_id))
        idx = static_cast<int>(i);
    }
    return idx;
  };
  std::set<uint64_t> elements;
  for (int id : subs) {
    bool is_point =
        std::binary_search(census.points.begin(), census.points.end(), id);
    std::string color = "black";
    std::string shape = is_point ? "ellipse" : "box";
    if (is_point && census.labeled) {
      const SetLabel& set = census.point_info.at(id).set;
      int palette_size = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
      color = kPalette[(set.index() * (census.q + 1) + class_of(id)) % palette_size];
    }
    out << "  s" << id << " [shape=" << shape << ",color=" << color
        << ",label=\"" << (is_point ? "P" : "F") << id << "\"];\n";
    for (uint64_t e : census.sub(id).elements)
      if (e != 0) elements.insert(e);
  }
  for (uint64_t e : elements) {
    std::string label;
    if (census.n == 2 && census.q == 2)
      label = std::to_string(figure_label_q2(e / census.ctx.ring_size)) + "," +
              std::to_string(figure_label_q2(e % census.ctx.ring_size));
    else
      label = std::to_string(e / census.ctx.ring_size) + ":" +
              std::to_string(e % census.ctx.ring_size);
    out << "  e" << e << " [shape=point,xlabel=\"(" << label << ")\"];\n";
  }
  for (int id : subs)
    for (uint64_t e : census.sub(id).elements)
      if (e != 0) out << "  s" << id << " -- e" << e << ";\n";
  out << "}\n";
  return out.str();
}

std::string structures_to_dot(const std::vector<IncidenceStructure>& structures,
                              const std::string& graph_name) {
  std::ostringstream out;
  out << "graph " << graph_name << " {\n";
  for (size_t si = 0; si < structures.size(); ++si) {
    const IncidenceStructure& s = structures[si];
    out << "  subgraph cluster" << si << " {\n";
    out << "    label=\"" << s.kind << " " << si << "\";\n";
    for (const Entity& e : s.points)
      out << "    g" << si << "p" << e.id << " [shape=point,xlabel=\"" << e.id
          << "\"];\n";
    for (size_t li = 0; li < s.lines.size(); ++li) {
      const Entity& e = s.lines[li];
      std::string color = kPalette[li % (sizeof(kPalette) / sizeof(kPalette[0]))];
      out << "    g" << si << "l" << e.id << " [shape=box,color=" << color
          << ",label=\"L" << e.id << "\"];\n";
      for (int pi : s.incidence[li])
        out << "    g" << si << "l" << e.id << " -- g" << si << "p"
            << s.points[pi].id << " [color=" << color << "];\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace trimat_geom
