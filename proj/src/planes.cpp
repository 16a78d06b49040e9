#include "trimat_geom/planes.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace trimat_geom {

namespace {

std::vector<std::vector<int>> lines_through(const IncidenceStructure& s) {
  std::vector<std::vector<int>> pl(s.points.size());
  for (size_t li = 0; li < s.incidence.size(); ++li)
    for (int pi : s.incidence[li]) pl[pi].push_back(static_cast<int>(li));
  return pl;
}

bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else
      return false;
  }
  return true;
}

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  int count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

int count_joining(const IncidenceStructure& s,
                  const std::vector<std::vector<int>>& pl, int pi, int pj) {
  int count = 0;
  for (int li : pl[pi])
    if (std::binary_search(s.incidence[li].begin(), s.incidence[li].end(), pj))
      ++count;
  return count;
}

bool collinear(const IncidenceStructure& s,
               const std::vector<std::vector<int>>& pl, int i, int j, int k) {
  for (int li : pl[i])
    if (std::binary_search(s.incidence[li].begin(), s.incidence[li].end(), j) &&
        std::binary_search(s.incidence[li].begin(), s.incidence[li].end(), k))
      return true;
  return false;
}

TriMatrix tmat(int n, std::initializer_list<int> entries) {
  TriMatrix m;
  m.n = n;
  int t = 0;
  for (int v : entries) m.e[t++] = static_cast<uint8_t>(v);
  return m;
}

std::string entity_label(const LineCensus& c, int id) {
  return pair_to_string(c.ctx, c.sub(id).canonical_generator);
}

// Class key of a point of the line inside its subset: the parallel classes
// fix every generator slot except the (3,1) ones.
struct ClassKey {
  int shape = 0;  // 0: diagonal-side-normalized family, 1: singular family
  int a = 0, b = 0;

  bool operator<(const ClassKey& o) const {
    if (shape != o.shape) return shape < o.shape;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

ClassKey class_key(const LineCensus& c, int point_id) {
  const EntityInfo& info = c.point_info.at(point_id);
  ModPair g = pair_decode(c.ctx, info.listed_gen);
  switch (info.family) {
    case 0:
    case 2:  // first set, x-side normalized: free slots are y11, y21, y31
      return {0, g.y.at(0, 0), g.y.at(1, 0)};
    case 1:
    case 3:  // first set, singular x-side: free slots x21, x31
      return {1, g.x.at(1, 0), 0};
    case 4:
    case 6:  // k-set, y-side normalized: free slots x11, x21, x31
      return {0, g.x.at(0, 0), g.x.at(1, 0)};
    case 5:
    case 7:  // k-set, singular y-side: free slots y21, y31
      return {1, g.y.at(1, 0), 0};
    default:
      throw Error(ErrorKind::BadInput, "point without a family label");
  }
}

}  // namespace

std::vector<long long> IncidenceStructure::line_point_ids(int li) const {
  std::vector<long long> ids;
  for (int pi : incidence[li]) ids.push_back(points[pi].id);
  return ids;
}

AxiomReport check_affine_axioms(const IncidenceStructure& s) {
  AxiomReport r;
  const int P = static_cast<int>(s.points.size());
  const int L = static_cast<int>(s.lines.size());
  auto pl = lines_through(s);

  r.a1 = true;
  for (int i = 0; i < P; ++i)
    for (int j = i + 1; j < P; ++j)
      if (count_joining(s, pl, i, j) != 1) {
        r.a1 = false;
        if (r.a1_failures.size() < 8)
          r.a1_failures.emplace_back(s.points[i].id, s.points[j].id);
      }

  r.a3 = false;
  for (int i = 0; i < P && !r.a3; ++i)
    for (int j = i + 1; j < P && !r.a3; ++j)
      for (int k = j + 1; k < P && !r.a3; ++k)
        if (!collinear(s, pl, i, j, k)) r.a3 = true;

  r.uniform_lines = L > 0;
  size_t m = L > 0 ? s.incidence[0].size() : 0;
  for (int li = 0; li < L; ++li)
    if (s.incidence[li].size() != m) r.uniform_lines = false;
  r.order = static_cast<int>(m);
  r.counts_ok = r.uniform_lines && P == static_cast<int>(m * m) &&
                L == static_cast<int>(m * m + m);

  // Parallel: equal or no point in common. Verified to be transitive, then
  // grouped into classes.
  auto parallel = [&](int a, int b) {
    return a == b || disjoint_sorted(s.incidence[a], s.incidence[b]);
  };
  r.parallelism_equivalence = true;
  for (int a = 0; a < L && r.parallelism_equivalence; ++a)
    for (int b = 0; b < L && r.parallelism_equivalence; ++b)
      for (int c = 0; c < L; ++c)
        if (parallel(a, b) && parallel(b, c) && !parallel(a, c)) {
          r.parallelism_equivalence = false;
          break;
        }
  std::vector<int> cls(L, -1);
  for (int li = 0; li < L; ++li) {
    for (size_t ci = 0; ci < r.parallel_classes.size(); ++ci)
      if (parallel(r.parallel_classes[ci][0], li)) {
        cls[li] = static_cast<int>(ci);
        r.parallel_classes[ci].push_back(li);
        break;
      }
    if (cls[li] < 0) {
      cls[li] = static_cast<int>(r.parallel_classes.size());
      r.parallel_classes.push_back({li});
    }
  }

  r.a2 = true;
  for (int li = 0; li < L; ++li)
    for (int pi = 0; pi < P; ++pi) {
      if (std::binary_search(s.incidence[li].begin(), s.incidence[li].end(), pi))
        continue;
      int count = 0;
      for (int lj : pl[pi])
        if (disjoint_sorted(s.incidence[lj], s.incidence[li])) ++count;
      if (count != 1) {
        r.a2 = false;
        if (r.a2_failures.size() < 8)
          r.a2_failures.emplace_back(s.lines[li].id, s.points[pi].id);
      }
    }
  return r;
}

AxiomReport check_projective_axioms(const IncidenceStructure& s) {
  AxiomReport r;
  const int P = static_cast<int>(s.points.size());
  const int L = static_cast<int>(s.lines.size());
  auto pl = lines_through(s);

  r.proj_points = true;
  for (int i = 0; i < P; ++i)
    for (int j = i + 1; j < P; ++j)
      if (count_joining(s, pl, i, j) != 1) r.proj_points = false;

  r.proj_lines = true;
  for (int a = 0; a < L; ++a)
    for (int b = a + 1; b < L; ++b)
      if (intersection_size(s.incidence[a], s.incidence[b]) != 1)
        r.proj_lines = false;

  r.uniform_lines = L > 0;
  size_t m1 = L > 0 ? s.incidence[0].size() : 0;
  for (int li = 0; li < L; ++li)
    if (s.incidence[li].size() != m1) r.uniform_lines = false;
  int m = static_cast<int>(m1) - 1;
  r.order = m;
  r.counts_ok = r.uniform_lines && m >= 1 && P == m * m + m + 1 && L == P;

  r.proj_quad = false;
  for (int a = 0; a < P && !r.proj_quad; ++a)
    for (int b = a + 1; b < P && !r.proj_quad; ++b)
      for (int c = b + 1; c < P && !r.proj_quad; ++c) {
        if (collinear(s, pl, a, b, c)) continue;
        for (int d = c + 1; d < P; ++d)
          if (!collinear(s, pl, a, b, d) && !collinear(s, pl, a, c, d) &&
              !collinear(s, pl, b, c, d)) {
            r.proj_quad = true;
            break;
          }
      }
  return r;
}

std::string PlaneKey::to_string(int n) const {
  std::string r = "set=" + set.to_string();
  if (n == 3) {
    r += " subset=" + subset_to_string(subset);
    r += " p21=" + std::to_string(static_cast<int>(p21));
    r += " r21=" + std::to_string(static_cast<int>(r21));
  }
  return r;
}

std::vector<PlaneKey> all_plane_keys(const LineCensus& census) {
  if (!census.labeled)
    throw Error(ErrorKind::DimensionUnsupported,
                "plane construction requires n = 2 or 3");
  std::vector<PlaneKey> keys;
  std::vector<SetLabel> sets;
  sets.push_back(SetLabel{true, 0});
  for (int k = 0; k < census.q; ++k)
    sets.push_back(SetLabel{false, static_cast<uint8_t>(k)});
  for (const SetLabel& set : sets) {
    if (census.n == 2) {
      keys.push_back(PlaneKey{set, {}, 0, 0});
      continue;
    }
    for (const SubsetLabel& sub : census.subsets_of(set))
      for (int p21 = 0; p21 < census.q; ++p21)
        for (int r21 = 0; r21 < census.q; ++r21)
          keys.push_back(PlaneKey{set, sub, static_cast<uint8_t>(p21),
                                  static_cast<uint8_t>(r21)});
  }
  return keys;
}

IncidenceStructure build_affine_plane(const LineCensus& census,
                                      const PlaneKey& key) {
  if (!census.labeled)
    throw Error(ErrorKind::DimensionUnsupported,
                "plane construction requires n = 2 or 3");
  if (!key.set.first && key.set.k >= census.q)
    throw Error(ErrorKind::SelectorInvalid, "set label outside field");

  std::vector<int> point_ids;
  for (int id : census.shielded) {
    auto it = census.shielded_info.find(id);
    if (it == census.shielded_info.end()) continue;
    const EntityInfo& info = it->second;
    if (!(info.set == key.set)) continue;
    if (census.n == 3) {
      if (info.subset != key.subset) continue;
      ModPair g = pair_decode(census.ctx, info.listed_gen);
      if (g.x.at(1, 0) != key.p21 || g.y.at(1, 0) != key.r21) continue;
    }
    point_ids.push_back(id);
  }
  std::sort(point_ids.begin(), point_ids.end());
  if (point_ids.size() != static_cast<size_t>(census.q) * census.q)
    throw Error(ErrorKind::SelectorInvalid,
                "selector does not identify a plane: " + key.to_string(census.n));

  std::vector<int> line_ids;
  for (int s : point_ids) {
    const std::vector<int>& owners = census.points_containing.at(s);
    line_ids.insert(line_ids.end(), owners.begin(), owners.end());
  }
  std::sort(line_ids.begin(), line_ids.end());
  line_ids.erase(std::unique(line_ids.begin(), line_ids.end()), line_ids.end());

  IncidenceStructure s;
  s.kind = "affine";
  s.n = census.n;
  s.q = census.q;
  for (int id : point_ids)
    s.points.push_back(Entity{id, "plane_point", entity_label(census, id), {}});
  for (int id : line_ids)
    s.lines.push_back(Entity{id, "line", entity_label(census, id), {}});
  s.incidence.resize(line_ids.size());
  for (size_t li = 0; li < line_ids.size(); ++li)
    for (size_t pi = 0; pi < point_ids.size(); ++pi) {
      const std::vector<int>& owners = census.points_containing.at(point_ids[pi]);
      if (std::binary_search(owners.begin(), owners.end(), line_ids[li]))
        s.incidence[li].push_back(static_cast<int>(pi));
    }
  return s;
}

IncidenceStructure projective_closure(const LineCensus& census,
                                      const IncidenceStructure& plane) {
  if (plane.kind != "affine")
    throw Error(ErrorKind::NotAnAffinePlane, "closure input must be an affine plane");
  AxiomReport rep = check_affine_axioms(plane);
  if (!rep.affine_ok())
    throw Error(ErrorKind::NotAnAffinePlane, "affine axioms fail");

  // Each line carries exactly one of the q+1 points-at-infinity submodules.
  std::vector<int> line_inf(plane.lines.size(), -1);
  for (size_t li = 0; li < plane.lines.size(); ++li) {
    int lid = static_cast<int>(plane.lines[li].id);
    for (int inf : census.infinity) {
      const std::vector<int>& owners = census.points_containing.at(inf);
      if (std::binary_search(owners.begin(), owners.end(), lid)) {
        if (line_inf[li] != -1)
          throw Error(ErrorKind::NotAnAffinePlane,
                      "line contains two points at infinity");
        line_inf[li] = inf;
      }
    }
    if (line_inf[li] < 0)
      throw Error(ErrorKind::NotAnAffinePlane,
                  "line contains no point at infinity");
  }

  auto info_it = census.shielded_info.find(static_cast<int>(plane.points[0].id));
  if (info_it == census.shielded_info.end())
    throw Error(ErrorKind::NotAnAffinePlane,
                "plane points are not shielded submodules of this census");
  SetLabel set = info_it->second.set;
  int x22 = set.first ? 1 : set.k;
  int y22 = set.first ? 0 : 1;
  int delta = y22 == 0 ? 1 : 0;
  uint64_t closure_gen;
  if (census.n == 2) {
    closure_gen = pair_code(
        census.ctx, ModPair{tmat(2, {x22, y22, 0}), tmat(2, {y22, delta, 0})});
  } else {
    closure_gen = pair_code(census.ctx,
                            ModPair{tmat(3, {x22, y22, 0, 0, delta, 0}),
                                    tmat(3, {y22, delta, 0, 0, y22, 0})});
  }
  int closure_id = census.mods.id_of_generator(census.ctx, closure_gen);
  if (closure_id < 0 ||
      !std::binary_search(census.nonuni.begin(), census.nonuni.end(), closure_id))
    throw Error(ErrorKind::NotAnAffinePlane,
                "closure line is not a non-unimodular free cyclic submodule");

  std::vector<int> inf_ids(line_inf);
  std::sort(inf_ids.begin(), inf_ids.end());
  inf_ids.erase(std::unique(inf_ids.begin(), inf_ids.end()), inf_ids.end());

  IncidenceStructure s;
  s.kind = "projective_closure";
  s.n = census.n;
  s.q = census.q;
  s.points = plane.points;
  std::map<int, int> inf_index;
  for (int inf : inf_ids) {
    inf_index[inf] = static_cast<int>(s.points.size());
    s.points.push_back(
        Entity{inf, "infinity_point", entity_label(census, inf), {}});
  }
  s.lines = plane.lines;
  s.lines.push_back(
      Entity{closure_id, "closure_line", entity_label(census, closure_id), {}});
  s.incidence = plane.incidence;
  for (size_t li = 0; li < plane.lines.size(); ++li) {
    s.incidence[li].push_back(inf_index.at(line_inf[li]));
    std::sort(s.incidence[li].begin(), s.incidence[li].end());
  }
  // The closure line's incidence is genuine containment over all points.
  std::vector<int> closure_row;
  const Submodule& cl = census.sub(closure_id);
  for (size_t pi = 0; pi < s.points.size(); ++pi) {
    int pid = static_cast<int>(s.points[pi].id);
    if (cl.has_element(census.sub(pid).canonical_generator))
      closure_row.push_back(static_cast<int>(pi));
  }
  s.incidence.push_back(closure_row);
  return s;
}

std::vector<TwoAffineKey> all_2affine_keys(const LineCensus& census) {
  if (census.n != 3)
    throw Error(ErrorKind::DimensionUnsupported, "2-affine planes require n = 3");
  std::vector<TwoAffineKey> keys;
  std::vector<SetLabel> sets;
  sets.push_back(SetLabel{true, 0});
  for (int k = 0; k < census.q; ++k)
    sets.push_back(SetLabel{false, static_cast<uint8_t>(k)});
  for (const SetLabel& set : sets)
    for (const SubsetLabel& sub : census.subsets_of(set))
      keys.push_back(TwoAffineKey{set, sub});
  return keys;
}

IncidenceStructure build_2affine_plane(const LineCensus& census,
                                       const TwoAffineKey& key,
                                       bool universal_reading) {
  if (census.n != 3)
    throw Error(ErrorKind::DimensionUnsupported, "2-affine planes require n = 3");
  auto subs = census.subsets_of(key.set);
  if (std::find(subs.begin(), subs.end(), key.subset) == subs.end())
    throw Error(ErrorKind::SubsetInvalid,
                "unknown subset " + subset_to_string(key.subset));

  const int q = census.q;
  // Points: the affine-plane point sets, grouped by (p21, r21).
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int id : census.shielded) {
    auto it = census.shielded_info.find(id);
    if (it == census.shielded_info.end()) continue;
    const EntityInfo& info = it->second;
    if (!(info.set == key.set) || info.subset != key.subset) continue;
    ModPair g = pair_decode(census.ctx, info.listed_gen);
    groups[{g.x.at(1, 0), g.y.at(1, 0)}].push_back(id);
  }
  // Lines: parallel classes of the subset's points of the line.
  std::map<ClassKey, std::vector<int>> classes;
  for (int id : census.points) {
    auto it = census.point_info.find(id);
    if (it == census.point_info.end()) continue;
    const EntityInfo& info = it->second;
    if (!(info.set == key.set) || info.subset != key.subset) continue;
    classes[class_key(census, id)].push_back(id);
  }

  IncidenceStructure s;
  s.kind = universal_reading ? "2affine" : "2affine_existential";
  s.n = census.n;
  s.q = census.q;
  for (auto& [pr, members] : groups) {
    std::sort(members.begin(), members.end());
    Entity e;
    e.id = static_cast<long long>(s.points.size());
    e.role = "plane_point_set";
    e.label = "p21=" + std::to_string(pr.first) + ",r21=" + std::to_string(pr.second);
    e.members = members;
    s.points.push_back(std::move(e));
  }
  for (auto& [ck, members] : classes) {
    std::sort(members.begin(), members.end());
    Entity e;
    e.id = static_cast<long long>(q) * q + static_cast<long long>(s.lines.size());
    e.role = "parallel_class";
    e.label = ck.shape == 0
                  ? "normalized:" + std::to_string(ck.a) + "," + std::to_string(ck.b)
                  : "singular:" + std::to_string(ck.a);
    e.members = members;
    s.lines.push_back(std::move(e));
  }

  s.incidence.resize(s.lines.size());
  for (size_t li = 0; li < s.lines.size(); ++li)
    for (size_t pi = 0; pi < s.points.size(); ++pi) {
      bool incident;
      if (universal_reading) {
        incident = true;
        for (int sid : s.points[pi].members) {
          const std::vector<int>& owners = census.points_containing.at(sid);
          bool in_some = false;
          for (int lid : s.lines[li].members)
            if (std::binary_search(owners.begin(), owners.end(), lid)) {
              in_some = true;
              break;
            }
          if (!in_some) {
            incident = false;
            break;
          }
        }
      } else {
        incident = false;
        for (int sid : s.points[pi].members) {
          const std::vector<int>& owners = census.points_containing.at(sid);
          for (int lid : s.lines[li].members)
            if (std::binary_search(owners.begin(), owners.end(), lid)) {
              incident = true;
              break;
            }
          if (incident) break;
        }
      }
      if (incident) s.incidence[li].push_back(static_cast<int>(pi));
    }
  return s;
}

IncidenceStructure classical_affine_plane(const FieldTable& f) {
  const int q = f.q;
  IncidenceStructure s;
  s.kind = "classical_affine";
  s.q = q;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      s.points.push_back(Entity{static_cast<long long>(a) * q + b,
                                "classical_point",
                                "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                                {}});
  for (int m = 0; m < q; ++m)
    for (int c = 0; c < q; ++c) {
      std::vector<int> row;
      for (int x = 0; x < q; ++x)
        row.push_back(x * q + f.add_at(f.mul_at(m, x), c));
      std::sort(row.begin(), row.end());
      s.lines.push_back(Entity{static_cast<long long>(m) * q + c, "classical_line",
                               "y=" + std::to_string(m) + "x+" + std::to_string(c),
                               {}});
      s.incidence.push_back(std::move(row));
    }
  for (int c = 0; c < q; ++c) {
    std::vector<int> row;
    for (int y = 0; y < q; ++y) row.push_back(c * q + y);
    std::sort(row.begin(), row.end());
    s.lines.push_back(Entity{static_cast<long long>(q) * q + c, "classical_line",
                             "x=" + std::to_string(c),
                             {}});
    s.incidence.push_back(std::move(row));
  }
  return s;
}

IncidenceStructure classical_projective_plane(const FieldTable& f) {
  const int q = f.q;
  std::vector<std::array<int, 3>> reps;
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) reps.push_back({1, y, z});
  for (int z = 0; z < q; ++z) reps.push_back({0, 1, z});
  reps.push_back({0, 0, 1});

  auto label = [](const std::array<int, 3>& v) {
    return "(" + std::to_string(v[0]) + ":" + std::to_string(v[1]) + ":" +
           std::to_string(v[2]) + ")";
  };
  IncidenceStructure s;
  s.kind = "classical_projective";
  s.q = q;
  for (size_t i = 0; i < reps.size(); ++i)
    s.points.push_back(
        Entity{static_cast<long long>(i), "classical_point", label(reps[i]), {}});
  for (size_t li = 0; li < reps.size(); ++li) {
    std::vector<int> row;
    for (size_t pi = 0; pi < reps.size(); ++pi) {
      uint8_t acc = 0;
      for (int t = 0; t < 3; ++t)
        acc = f.add_at(acc, f.mul_at(reps[li][t], reps[pi][t]));
      if (acc == 0) row.push_back(static_cast<int>(pi));
    }
    s.lines.push_back(Entity{static_cast<long long>(li), "classical_line",
                             label(reps[li]), {}});
    s.incidence.push_back(std::move(row));
  }
  return s;
}

std::optional<std::vector<int>> find_isomorphism(const IncidenceStructure& a,
                                                 const IncidenceStructure& b) {
  const int P = static_cast<int>(a.points.size());
  if (P != static_cast<int>(b.points.size()) ||
      a.lines.size() != b.lines.size())
    return std::nullopt;
  if (P > 21)
    throw Error(ErrorKind::OrderTooLargeForSearch,
                "isomorphism search supports at most 21 points");

  auto pla = lines_through(a);
  auto plb = lines_through(b);

  std::vector<size_t> sizes_a, sizes_b;
  for (auto& row : a.incidence) sizes_a.push_back(row.size());
  for (auto& row : b.incidence) sizes_b.push_back(row.size());
  std::sort(sizes_a.begin(), sizes_a.end());
  std::sort(sizes_b.begin(), sizes_b.end());
  if (sizes_a != sizes_b) return std::nullopt;

  std::vector<int> f(P, -1);
  std::vector<bool> used(P, false);

  auto extendable = [&](int i, int c) {
    for (int li : pla[i]) {
      std::vector<int> img;
      for (int p : a.incidence[li])
        if (f[p] >= 0) img.push_back(f[p]);
      img.push_back(c);
      if (img.size() < 2) continue;
      bool found = false;
      for (int lb : plb[img[0]]) {
        if (b.incidence[lb].size() != a.incidence[li].size()) continue;
        bool contains_all = true;
        for (int p : img)
          if (!std::binary_search(b.incidence[lb].begin(), b.incidence[lb].end(), p)) {
            contains_all = false;
            break;
          }
        if (contains_all) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };

  std::map<std::vector<int>, int> b_lines;
  for (auto& row : b.incidence) ++b_lines[row];

  auto verify = [&]() {
    std::map<std::vector<int>, int> remaining = b_lines;
    for (auto& row : a.incidence) {
      std::vector<int> img;
      for (int p : row) img.push_back(f[p]);
      std::sort(img.begin(), img.end());
      auto it = remaining.find(img);
      if (it == remaining.end() || it->second == 0) return false;
      --it->second;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == P) return verify();
    for (int c = 0; c < P; ++c) {
      if (used[c] || plb[c].size() != pla[i].size()) continue;
      if (!extendable(i, c)) continue;
      f[i] = c;
      used[c] = true;
      if (self(self, i + 1)) return true;
      f[i] = -1;
      used[c] = false;
    }
    return false;
  };
  if (dfs(dfs, 0)) return f;
  return std::nullopt;
}

std::optional<std::vector<int>> isomorphism_to_classical(
    const IncidenceStructure& s, const FieldTable& f) {
  if (f.q > 4)
    throw Error(ErrorKind::OrderTooLargeForSearch,
                "classical comparison supported for q <= 4");
  const size_t q = static_cast<size_t>(f.q);
  if (s.points.size() == q * q)
    return find_isomorphism(s, classical_affine_plane(f));
  if (s.points.size() == q * q + q + 1)
    return find_isomorphism(s, classical_projective_plane(f));
  return std::nullopt;
}

std::vector<CheckResult> check_slot_conditions(const LineCensus& census) {
  std::vector<CheckResult> out;
  if (!census.labeled)
    throw Error(ErrorKind::DimensionUnsupported,
                "slot-condition checks require n = 2 or 3");
  auto slots = [&](int point_id) {
    return pair_decode(census.ctx, census.point_info.at(point_id).listed_gen);
  };
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    out.push_back(CheckResult{name, pass, false, detail});
  };

  // Ground truth: line sets of every built plane, from containment.
  std::vector<PlaneKey> keys = all_plane_keys(census);
  std::vector<std::vector<int>> plane_lines;  // sorted line ids per plane
  std::vector<IncidenceStructure> planes;
  for (const PlaneKey& key : keys) {
    IncidenceStructure p = build_affine_plane(census, key);
    std::vector<int> ids;
    for (const Entity& e : p.lines) ids.push_back(static_cast<int>(e.id));
    plane_lines.push_back(ids);
    planes.push_back(std::move(p));
  }

  if (census.n == 2) {
    // Each point of the line serves as a line of exactly one plane, and two
    // points serve the same plane iff their (2,2) slots agree.
    std::unordered_map<int, int> owner;
    bool unique_owner = true;
    for (size_t k = 0; k < keys.size(); ++k)
      for (int id : plane_lines[k]) {
        if (owner.count(id)) unique_owner = false;
        owner[id] = static_cast<int>(k);
      }
    bool covers = owner.size() == census.points.size();
    add("each point of the line is a line of exactly one plane",
        unique_owner && covers);

    bool cor1 = true;
    for (size_t i = 0; i < census.points.size() && cor1; ++i)
      for (size_t j = i + 1; j < census.points.size(); ++j) {
        int p = census.points[i], r = census.points[j];
        ModPair gp = slots(p), gr = slots(r);
        bool same_slots =
            gp.x.at(1, 1) == gr.x.at(1, 1) && gp.y.at(1, 1) == gr.y.at(1, 1);
        bool same_plane = owner.count(p) && owner.count(r) &&
                          owner.at(p) == owner.at(r);
        if (same_slots != same_plane) {
          cor1 = false;
          break;
        }
      }
    add("same plane iff equal (2,2) slots", cor1);

    bool cor2 = true, cor3 = true;
    for (size_t k = 0; k < keys.size(); ++k) {
      AxiomReport rep = check_affine_axioms(planes[k]);
      std::vector<int> cls(planes[k].lines.size(), -1);
      for (size_t ci = 0; ci < rep.parallel_classes.size(); ++ci)
        for (int li : rep.parallel_classes[ci]) cls[li] = static_cast<int>(ci);
      for (size_t a = 0; a < planes[k].lines.size(); ++a)
        for (size_t bi = a + 1; bi < planes[k].lines.size(); ++bi) {
          ModPair ga = slots(static_cast<int>(planes[k].lines[a].id));
          ModPair gb = slots(static_cast<int>(planes[k].lines[bi].id));
          bool same_11 =
              ga.x.at(0, 0) == gb.x.at(0, 0) && ga.y.at(0, 0) == gb.y.at(0, 0);
          if (same_11 != (cls[a] == cls[bi])) cor2 = false;
          if (cls[a] == cls[bi]) {
            bool same_21 =
                ga.x.at(1, 0) == gb.x.at(1, 0) && ga.y.at(1, 0) == gb.y.at(1, 0);
            if (same_21) cor3 = false;  // distinct parallel lines must differ
          }
        }
    }
    add("same parallel class iff equal (1,1) slots", cor2);
    add("distinct parallel lines differ in the (2,1) slots", cor3);
    return out;
  }

  // n = 3.
  bool part1 = true;
  {
    std::vector<int> pts = census.points;
    std::vector<ModPair> gens;
    std::vector<std::pair<int, SubsetLabel>> labels;
    gens.reserve(pts.size());
    for (int id : pts) {
      gens.push_back(slots(id));
      const EntityInfo& info = census.point_info.at(id);
      labels.emplace_back(info.set.index(), info.subset);
    }
    for (size_t i = 0; i < pts.size() && part1; ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        const ModPair &ga = gens[i], &gb = gens[j];
        bool same_slots = ga.x.at(1, 1) == gb.x.at(1, 1) &&
                          ga.x.at(2, 1) == gb.x.at(2, 1) &&
                          ga.x.at(2, 2) == gb.x.at(2, 2) &&
                          ga.y.at(1, 1) == gb.y.at(1, 1) &&
                          ga.y.at(2, 1) == gb.y.at(2, 1) &&
                          ga.y.at(2, 2) == gb.y.at(2, 2);
        if (same_slots != (labels[i] == labels[j])) {
          part1 = false;
          break;
        }
      }
  }
  add("same subset iff equal non-(1,1)/(2,1)/(3,1) slots", part1);

  // Subset cover: the lines of the subset's planes are exactly the subset's
  // points of the line.
  bool cover = true;
  {
    std::map<std::pair<int, SubsetLabel>, std::set<int>> from_planes, from_labels;
    for (size_t k = 0; k < keys.size(); ++k) {
      auto key = std::make_pair(keys[k].set.index(), keys[k].subset);
      from_planes[key].insert(plane_lines[k].begin(), plane_lines[k].end());
    }
    for (int id : census.points) {
      const EntityInfo& info = census.point_info.at(id);
      from_labels[{info.set.index(), info.subset}].insert(id);
    }
    cover = from_planes == from_labels;
  }
  add("plane lines of a subset cover exactly the subset's points", cover);

  // Plane membership: the containment-derived line set of plane (p21, r21)
  // matches the slot predicate.
  bool part2 = true;
  for (size_t k = 0; k < keys.size() && part2; ++k) {
    const PlaneKey& key = keys[k];
    std::set<int> predicted;
    for (int id : census.points) {
      const EntityInfo& info = census.point_info.at(id);
      if (!(info.set == key.set) || info.subset != key.subset) continue;
      ModPair g = slots(id);
      bool member;
      const FieldTable& f = census.ctx.field;
      switch (info.family) {
        case 0:
        case 2:
          member = g.y.at(1, 0) ==
                   f.sub_at(key.r21, f.mul_at(key.p21, g.y.at(0, 0)));
          break;
        case 1:
        case 3:
          member = g.x.at(1, 0) == key.p21;
          break;
        case 4:
        case 6:
          member = g.x.at(1, 0) ==
                   f.sub_at(key.p21, f.mul_at(key.r21, g.x.at(0, 0)));
          break;
        default:
          member = g.y.at(1, 0) == key.r21;
          break;
      }
      if (member) predicted.insert(id);
    }
    std::set<int> actual(plane_lines[k].begin(), plane_lines[k].end());
    if (predicted != actual) part2 = false;
  }
  add("plane line sets match the slot membership predicate", part2);

  bool part3 = true;
  for (size_t k = 0; k < keys.size() && part3; ++k) {
    AxiomReport rep = check_affine_axioms(planes[k]);
    std::vector<int> cls(planes[k].lines.size(), -1);
    for (size_t ci = 0; ci < rep.parallel_classes.size(); ++ci)
      for (int li : rep.parallel_classes[ci]) cls[li] = static_cast<int>(ci);
    for (size_t a = 0; a < planes[k].lines.size() && part3; ++a)
      for (size_t bi = a + 1; bi < planes[k].lines.size(); ++bi) {
        ModPair ga = slots(static_cast<int>(planes[k].lines[a].id));
        ModPair gb = slots(static_cast<int>(planes[k].lines[bi].id));
        bool same_but_31 = true;
        for (int i = 0; i < 3 && same_but_31; ++i)
          for (int j = 0; j <= i; ++j) {
            if (i == 2 && j == 0) continue;
            if (ga.x.at(i, j) != gb.x.at(i, j) || ga.y.at(i, j) != gb.y.at(i, j)) {
              same_but_31 = false;
              break;
            }
          }
        if (same_but_31 != (cls[a] == cls[bi])) {
          part3 = false;
          break;
        }
      }
  }
  add("parallel lines differ only in the (3,1) slots", part3);
  return out;
}

}  // namespace trimat_geom
