#include "trimat_geom/projline.hpp"

#include <algorithm>

namespace trimat_geom {

namespace {

TriMatrix tm2(int a11, int a21, int a22) {
  TriMatrix m;
  m.n = 2;
  m.e[0] = static_cast<uint8_t>(a11);
  m.e[1] = static_cast<uint8_t>(a21);
  m.e[2] = static_cast<uint8_t>(a22);
  return m;
}

TriMatrix tm3(int a11, int a21, int a22, int a31, int a32, int a33) {
  TriMatrix m;
  m.n = 3;
  m.e[0] = static_cast<uint8_t>(a11);
  m.e[1] = static_cast<uint8_t>(a21);
  m.e[2] = static_cast<uint8_t>(a22);
  m.e[3] = static_cast<uint8_t>(a31);
  m.e[4] = static_cast<uint8_t>(a32);
  m.e[5] = static_cast<uint8_t>(a33);
  return m;
}

void push(std::vector<FamilyEntry>& out, const RingContext& ctx, TriMatrix x,
          TriMatrix y, SetLabel set, SubsetLabel subset, int family) {
  FamilyEntry e;
  e.gen = pair_code(ctx, ModPair{x, y});
  e.set = set;
  e.subset = subset;
  e.family = family;
  out.push_back(e);
}

}  // namespace

std::string subset_to_string(const SubsetLabel& s) {
  std::string r = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) r += ",";
    r += std::to_string(static_cast<int>(s[i]));
  }
  return r + ")";
}

std::vector<FamilyEntry> point_generator_family(const RingContext& ctx) {
  const int q = ctx.field.q;
  std::vector<FamilyEntry> out;
  if (ctx.n == 2) {
    SetLabel first{true, 0};
    for (int y11 = 0; y11 < q; ++y11)
      for (int y21 = 0; y21 < q; ++y21)
        push(out, ctx, tm2(1, 0, 1), tm2(y11, y21, 0), first, {}, 0);
    for (int x21 = 0; x21 < q; ++x21)
      push(out, ctx, tm2(0, x21, 1), tm2(1, 0, 0), first, {}, 1);
    for (int k = 0; k < q; ++k) {
      SetLabel ks{false, static_cast<uint8_t>(k)};
      for (int x11 = 0; x11 < q; ++x11)
        for (int x21 = 0; x21 < q; ++x21)
          push(out, ctx, tm2(x11, x21, k), tm2(1, 0, 1), ks, {}, 2);
      for (int y21 = 0; y21 < q; ++y21)
        push(out, ctx, tm2(1, 0, k), tm2(0, y21, 1), ks, {}, 3);
    }
    return out;
  }
  if (ctx.n == 3) {
    SetLabel first{true, 0};
    for (int y32 = 0; y32 < q; ++y32)
      for (int y33 = 0; y33 < q; ++y33) {
        SubsetLabel sub{0, 1, static_cast<uint8_t>(y32), static_cast<uint8_t>(y33)};
        for (int y11 = 0; y11 < q; ++y11)
          for (int y21 = 0; y21 < q; ++y21)
            for (int y31 = 0; y31 < q; ++y31)
              push(out, ctx, tm3(1, 0, 1, 0, 0, 1),
                   tm3(y11, y21, 0, y31, y32, y33), first, sub, 0);
        for (int x21 = 0; x21 < q; ++x21)
          for (int x31 = 0; x31 < q; ++x31)
            push(out, ctx, tm3(0, x21, 1, x31, 0, 1),
                 tm3(1, 0, 0, 0, y32, y33), first, sub, 1);
      }
    for (int y32 = 0; y32 < q; ++y32) {
      SubsetLabel sub{0, 0, static_cast<uint8_t>(y32), 1};
      for (int y11 = 0; y11 < q; ++y11)
        for (int y21 = 0; y21 < q; ++y21)
          for (int y31 = 0; y31 < q; ++y31)
            push(out, ctx, tm3(1, 0, 1, 0, 0, 0),
                 tm3(y11, y21, 0, y31, y32, 1), first, sub, 2);
      for (int x21 = 0; x21 < q; ++x21)
        for (int x31 = 0; x31 < q; ++x31)
          push(out, ctx, tm3(0, x21, 1, x31, 0, 0), tm3(1, 0, 0, 0, y32, 1),
               first, sub, 3);
    }
    for (int k = 0; k < q; ++k) {
      SetLabel ks{false, static_cast<uint8_t>(k)};
      for (int x32 = 0; x32 < q; ++x32)
        for (int x33 = 0; x33 < q; ++x33) {
          SubsetLabel sub{static_cast<uint8_t>(x32), static_cast<uint8_t>(x33), 0, 1};
          for (int x11 = 0; x11 < q; ++x11)
            for (int x21 = 0; x21 < q; ++x21)
              for (int x31 = 0; x31 < q; ++x31)
                push(out, ctx, tm3(x11, x21, k, x31, x32, x33),
                     tm3(1, 0, 1, 0, 0, 1), ks, sub, 4);
          for (int y21 = 0; y21 < q; ++y21)
            for (int y31 = 0; y31 < q; ++y31)
              push(out, ctx, tm3(1, 0, k, 0, x32, x33),
                   tm3(0, y21, 1, y31, 0, 1), ks, sub, 5);
        }
      for (int x32 = 0; x32 < q; ++x32) {
        SubsetLabel sub{static_cast<uint8_t>(x32), 1, 0, 0};
        for (int x11 = 0; x11 < q; ++x11)
          for (int x21 = 0; x21 < q; ++x21)
            for (int x31 = 0; x31 < q; ++x31)
              push(out, ctx, tm3(x11, x21, k, x31, x32, 1),
                   tm3(1, 0, 1, 0, 0, 0), ks, sub, 6);
        for (int y21 = 0; y21 < q; ++y21)
          for (int y31 = 0; y31 < q; ++y31)
            push(out, ctx, tm3(1, 0, k, 0, x32, 1), tm3(0, y21, 1, y31, 0, 0),
                 ks, sub, 7);
      }
    }
    return out;
  }
  throw Error(ErrorKind::DimensionUnsupported,
              "generator families exist only for n = 2, 3");
}

std::vector<FamilyEntry> nonuni_fcs_generator_family(const RingContext& ctx) {
  const int q = ctx.field.q;
  std::vector<FamilyEntry> out;
  if (ctx.n == 2) {
    push(out, ctx, tm2(1, 0, 0), tm2(0, 1, 0), SetLabel{true, 0}, {}, 0);
    for (int k = 0; k < q; ++k)
      push(out, ctx, tm2(k, 1, 0), tm2(1, 0, 0),
           SetLabel{false, static_cast<uint8_t>(k)}, {}, 1);
    return out;
  }
  if (ctx.n == 3) {
    SetLabel first{true, 0};
    for (int x32 = 0; x32 < q; ++x32) {
      for (int y32 = 0; y32 < q; ++y32) {
        for (int y33 = 0; y33 < q; ++y33)
          push(out, ctx, tm3(1, 0, 0, 0, x32, 1), tm3(0, 1, 0, 0, y32, y33),
               first, {}, 0);
        push(out, ctx, tm3(1, 0, 0, 0, x32, 0), tm3(0, 1, 0, 0, y32, 1),
             first, {}, 1);
      }
      push(out, ctx, tm3(1, 0, 0, 0, x32, 0), tm3(0, 1, 0, 0, 1, 0), first, {}, 2);
    }
    push(out, ctx, tm3(1, 0, 0, 0, 1, 0), tm3(0, 1, 0, 0, 0, 0), first, {}, 3);
    for (int y21 = 0; y21 < q; ++y21) {
      for (int y22 = 0; y22 < q; ++y22) {
        for (int y31 = 0; y31 < q; ++y31)
          push(out, ctx, tm3(1, 0, 1, 0, 0, 0), tm3(0, y21, y22, y31, 1, 0),
               first, {}, 4);
        push(out, ctx, tm3(1, 0, 1, 0, 0, 0), tm3(0, y21, y22, 1, 0, 0),
             first, {}, 5);
      }
      for (int y31 = 0; y31 < q; ++y31)
        push(out, ctx, tm3(1, 0, 0, 0, 1, 0), tm3(0, y21, 1, y31, 0, 0),
             first, {}, 6);
      push(out, ctx, tm3(1, 0, 0, 0, 0, 0), tm3(0, y21, 1, 1, 0, 0), first, {}, 7);
    }
    for (int k = 0; k < q; ++k) {
      SetLabel ks{false, static_cast<uint8_t>(k)};
      for (int x32 = 0; x32 < q; ++x32) {
        for (int y32 = 0; y32 < q; ++y32) {
          for (int x33 = 0; x33 < q; ++x33)
            push(out, ctx, tm3(k, 1, 0, 0, x32, x33), tm3(1, 0, 0, 0, y32, 1),
                 ks, {}, 0);
          push(out, ctx, tm3(k, 1, 0, 0, x32, 1), tm3(1, 0, 0, 0, y32, 0),
               ks, {}, 1);
        }
      }
      for (int y32 = 0; y32 < q; ++y32)
        push(out, ctx, tm3(k, 1, 0, 0, 1, 0), tm3(1, 0, 0, 0, y32, 0), ks, {}, 2);
      push(out, ctx, tm3(k, 1, 0, 0, 0, 0), tm3(1, 0, 0, 0, 1, 0), ks, {}, 3);
      for (int x21 = 0; x21 < q; ++x21) {
        for (int x22 = 0; x22 < q; ++x22) {
          for (int x31 = 0; x31 < q; ++x31)
            push(out, ctx, tm3(k, x21, x22, x31, 1, 0), tm3(1, 0, 1, 0, 0, 0),
                 ks, {}, 4);
          push(out, ctx, tm3(k, x21, x22, 1, 0, 0), tm3(1, 0, 1, 0, 0, 0),
               ks, {}, 5);
        }
        for (int x31 = 0; x31 < q; ++x31)
          push(out, ctx, tm3(k, x21, 1, x31, 0, 0), tm3(1, 0, 0, 0, 1, 0),
               ks, {}, 6);
        push(out, ctx, tm3(k, x21, 1, 1, 0, 0), tm3(1, 0, 0, 0, 0, 0), ks, {}, 7);
      }
    }
    return out;
  }
  throw Error(ErrorKind::DimensionUnsupported,
              "generator families exist only for n = 2, 3");
}

std::vector<FamilyEntry> shielded_generator_family(const RingContext& ctx) {
  const int q = ctx.field.q;
  std::vector<FamilyEntry> out;
  if (ctx.n == 2) {
    SetLabel first{true, 0};
    for (int p21 = 0; p21 < q; ++p21)
      for (int r21 = 0; r21 < q; ++r21)
        push(out, ctx, tm2(0, p21, 1), tm2(0, r21, 0), first, {}, 0);
    for (int k = 0; k < q; ++k) {
      SetLabel ks{false, static_cast<uint8_t>(k)};
      for (int p21 = 0; p21 < q; ++p21)
        for (int r21 = 0; r21 < q; ++r21)
          push(out, ctx, tm2(0, p21, k), tm2(0, r21, 1), ks, {}, 1);
    }
    return out;
  }
  if (ctx.n == 3) {
    SetLabel first{true, 0};
    for (int r32 = 0; r32 < q; ++r32) {
      for (int r33 = 0; r33 < q; ++r33) {
        SubsetLabel sub{0, 1, static_cast<uint8_t>(r32), static_cast<uint8_t>(r33)};
        for (int p21 = 0; p21 < q; ++p21)
          for (int p31 = 0; p31 < q; ++p31)
            for (int r21 = 0; r21 < q; ++r21)
              for (int r31 = 0; r31 < q; ++r31)
                push(out, ctx, tm3(0, p21, 1, p31, 0, 1),
                     tm3(0, r21, 0, r31, r32, r33), first, sub, 0);
      }
      SubsetLabel sub{0, 0, static_cast<uint8_t>(r32), 1};
      for (int p21 = 0; p21 < q; ++p21)
        for (int p31 = 0; p31 < q; ++p31)
          for (int r21 = 0; r21 < q; ++r21)
            for (int r31 = 0; r31 < q; ++r31)
              push(out, ctx, tm3(0, p21, 1, p31, 0, 0),
                   tm3(0, r21, 0, r31, r32, 1), first, sub, 1);
    }
    for (int k = 0; k < q; ++k) {
      SetLabel ks{false, static_cast<uint8_t>(k)};
      for (int p32 = 0; p32 < q; ++p32) {
        for (int p33 = 0; p33 < q; ++p33) {
          SubsetLabel sub{static_cast<uint8_t>(p32), static_cast<uint8_t>(p33), 0, 1};
          for (int p21 = 0; p21 < q; ++p21)
            for (int p31 = 0; p31 < q; ++p31)
              for (int r21 = 0; r21 < q; ++r21)
                for (int r31 = 0; r31 < q; ++r31)
                  push(out, ctx, tm3(0, p21, k, p31, p32, p33),
                       tm3(0, r21, 1, r31, 0, 1), ks, sub, 2);
        }
        SubsetLabel sub{static_cast<uint8_t>(p32), 1, 0, 0};
        for (int p21 = 0; p21 < q; ++p21)
          for (int p31 = 0; p31 < q; ++p31)
            for (int r21 = 0; r21 < q; ++r21)
              for (int r31 = 0; r31 < q; ++r31)
                push(out, ctx, tm3(0, p21, k, p31, p32, 1),
                     tm3(0, r21, 1, r31, 0, 0), ks, sub, 3);
      }
    }
    return out;
  }
  throw Error(ErrorKind::DimensionUnsupported,
              "generator families exist only for n = 2, 3");
}

std::vector<SubsetLabel> LineCensus::subsets_of(const SetLabel& set) const {
  std::vector<SubsetLabel> subs;
  for (const auto& [id, info] : point_info)
    if (info.set == set) subs.push_back(info.subset);
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  return subs;
}

LineCensus build_line_census(int n, int q, int workers, int max_q) {
  LineCensus c;
  c.n = n;
  c.q = q;
  c.ctx = ring_context(n, field_make(q, max_q));
  c.mods = enumerate_submodules(c.ctx, workers);

  for (int id = 0; id < c.mods.size(); ++id) {
    const Submodule& s = c.mods.at(id);
    if (s.is_free) {
      (s.is_unimodular_generated ? c.points : c.nonuni).push_back(id);
    } else {
      c.nonfree.push_back(id);
    }
  }

  for (int id : c.nonfree) {
    bool covered = false;
    for (int nid : c.nonuni)
      if (c.sub(nid).has_element(c.sub(id).canonical_generator)) {
        covered = true;
        break;
      }
    if (!covered) c.shielded.push_back(id);
  }

  if (n == 2) {
    for (int id : c.nonfree) {
      const Submodule& s = c.sub(id);
      if (s.order != static_cast<uint64_t>(q)) continue;
      ModPair g = pair_decode(c.ctx, s.canonical_generator);
      bool both_radical = in_radical(g.x) && in_radical(g.y);
      (both_radical ? c.type_a : c.type_b).push_back(id);
    }
  }

  if (n == 2 || n == 3) {
    c.labeled = true;
    auto assign = [&](const std::vector<FamilyEntry>& family,
                      const std::vector<int>& expected_ids,
                      std::unordered_map<int, EntityInfo>& info,
                      const char* what) {
      std::vector<int> seen;
      for (const FamilyEntry& e : family) {
        int id = c.mods.id_of_generator(c.ctx, e.gen);
        if (id < 0) {
          c.anomalies.push_back(std::string(what) + ": listed generator " +
                                std::to_string(e.gen) + " matches no submodule");
          continue;
        }
        if (info.count(id)) {
          c.anomalies.push_back(std::string(what) + ": submodule " +
                                std::to_string(id) + " listed twice");
          continue;
        }
        info[id] = EntityInfo{e.set, e.subset, e.family, e.gen};
        seen.push_back(id);
      }
      std::sort(seen.begin(), seen.end());
      if (seen != expected_ids)
        c.anomalies.push_back(std::string(what) +
                              ": listed family differs from enumerated census");
    };

    assign(point_generator_family(c.ctx), c.points, c.point_info, "points");
    assign(nonuni_fcs_generator_family(c.ctx), c.nonuni, c.nonuni_info,
           "nonuni_fcs");
    assign(shielded_generator_family(c.ctx), c.shielded, c.shielded_info,
           "shielded");

    if (n == 2) {
      if (c.type_b != c.shielded)
        c.anomalies.push_back("type (b) submodules differ from shielded set");
      c.infinity = c.type_a;
    } else {
      std::vector<std::pair<int, int>> ratios;
      ratios.emplace_back(1, 0);
      for (int k = 0; k < q; ++k) ratios.emplace_back(k, 1);
      for (auto [a, b] : ratios) {
        uint64_t gen = pair_code(
            c.ctx, ModPair{tm3(0, 0, 0, a, 0, 0), tm3(0, 0, 0, b, 0, 0)});
        int id = c.mods.id_of_generator(c.ctx, gen);
        if (id < 0)
          c.anomalies.push_back("infinity submodule not found in census");
        else
          c.infinity.push_back(id);
      }
      std::sort(c.infinity.begin(), c.infinity.end());
      c.infinity.erase(std::unique(c.infinity.begin(), c.infinity.end()),
                       c.infinity.end());
    }

    std::vector<int> targets = c.shielded;
    targets.insert(targets.end(), c.infinity.begin(), c.infinity.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int sid : targets) {
      std::vector<int> owners;
      uint64_t gen = c.sub(sid).canonical_generator;
      for (int p : c.points)
        if (c.sub(p).has_element(gen)) owners.push_back(p);
      c.points_containing[sid] = std::move(owners);
    }
  }
  return c;
}

OrderQClassification classify_order_q_n2(const LineCensus& census) {
  if (census.n != 2)
    throw Error(ErrorKind::DimensionUnsupported,
                "order-q classification applies to n = 2 only");
  OrderQClassification r;
  r.type_a = census.type_a;
  r.type_b = census.type_b;
  std::vector<SetLabel> sets;
  sets.push_back(SetLabel{true, 0});
  for (int k = 0; k < census.q; ++k)
    sets.push_back(SetLabel{false, static_cast<uint8_t>(k)});
  for (const SetLabel& s : sets) {
    std::vector<int> ids;
    for (int id : census.type_b) {
      auto it = census.shielded_info.find(id);
      if (it != census.shielded_info.end() && it->second.set == s)
        ids.push_back(id);
    }
    r.type_b_sets.emplace_back(s, std::move(ids));
  }
  return r;
}

bool fast_free_nonuni_n2(const FieldTable& f, const ModPair& g) {
  const uint8_t x11 = g.x.at(0, 0), x21 = g.x.at(1, 0), x22 = g.x.at(1, 1);
  const uint8_t y11 = g.y.at(0, 0), y21 = g.y.at(1, 0), y22 = g.y.at(1, 1);
  if (x22 != 0 || y22 != 0) return false;
  if (x11 == 0 && y11 != 0) return x21 != 0;
  if (x11 != 0 && y11 == 0) return y21 != 0;
  if (x11 != 0 && y11 != 0) {
    if (x21 == 0) return y21 != 0;
    return y21 != f.mul_at(f.inv_at(x11), f.mul_at(x21, y11));
  }
  return false;
}

bool fast_free_nonuni_n3(const FieldTable& f, const ModPair& g) {
  const uint8_t x11 = g.x.at(0, 0), x21 = g.x.at(1, 0), x22 = g.x.at(1, 1);
  const uint8_t x31 = g.x.at(2, 0), x32 = g.x.at(2, 1), x33 = g.x.at(2, 2);
  const uint8_t y11 = g.y.at(0, 0), y21 = g.y.at(1, 0), y22 = g.y.at(1, 1);
  const uint8_t y31 = g.y.at(2, 0), y32 = g.y.at(2, 1), y33 = g.y.at(2, 2);
  (void)x31;
  (void)y31;
  // Leading clause as tabulated ("x22 = y22 = 0 or x22 = y22 = 0").
  if (!(x22 == 0 && y22 == 0)) return false;
  const bool tail = x32 != 0 || x33 != 0 || y32 != 0 || y33 != 0;
  if (x11 == 0 && y11 != 0) {
    // Branches (b)-(d) require x22 != 0 or y22 != 0 and are unreachable
    // under the leading clause.
    return x21 != 0 && tail;  // 1(a)
  }
  if (x11 != 0 && y11 == 0) {
    return y21 != 0 && tail;  // 2(a)
  }
  if (x11 != 0 && y11 != 0) {
    // 3(a), exactly as tabulated: no (x32,x33,y32,y33) tail.
    return x21 != f.mul_at(f.mul_at(x11, f.inv_at(y11)), y21);
  }
  return false;
}

bool fast_free_nonuni_n3_fixed(const FieldTable& f, const ModPair& g) {
  const uint8_t x11 = g.x.at(0, 0), x21 = g.x.at(1, 0), x22 = g.x.at(1, 1);
  const uint8_t x31 = g.x.at(2, 0), x32 = g.x.at(2, 1), x33 = g.x.at(2, 2);
  const uint8_t y11 = g.y.at(0, 0), y21 = g.y.at(1, 0), y22 = g.y.at(1, 1);
  const uint8_t y31 = g.y.at(2, 0), y32 = g.y.at(2, 1), y33 = g.y.at(2, 2);
  if (x11 == 0 && y11 == 0) return false;
  if (x22 == 0 && y22 == 0) {
    // rows 1,2 independent: det(x11 y11 / x21 y21) != 0; row 3 outside their
    // span: some (3,2)/(3,3) slot nonzero.
    uint8_t det = f.sub_at(f.mul_at(x11, y21), f.mul_at(x21, y11));
    return det != 0 && (x32 != 0 || x33 != 0 || y32 != 0 || y33 != 0);
  }
  if (x33 == 0 && y33 == 0) {
    // Row 3 lies in the span of rows 1,2 iff a consistent multiplier beta
    // exists for the (3,2) slots and the (3,1) slots then match.
    bool consistent;
    uint8_t beta;
    if (x22 != 0 && y22 != 0) {
      consistent = f.mul_at(x32, y22) == f.mul_at(x22, y32);
      beta = f.mul_at(y32, f.inv_at(y22));
    } else if (x22 != 0) {
      consistent = y32 == 0;
      beta = f.mul_at(x32, f.inv_at(x22));
    } else {
      consistent = x32 == 0;
      beta = f.mul_at(y32, f.inv_at(y22));
    }
    if (!consistent) return true;
    bool dependent;
    if (x11 != 0) {
      uint8_t alpha = f.mul_at(f.sub_at(x31, f.mul_at(beta, x21)), f.inv_at(x11));
      dependent = y31 == f.add_at(f.mul_at(alpha, y11), f.mul_at(beta, y21));
    } else {
      dependent = x31 == f.mul_at(beta, x21);
    }
    return !dependent;
  }
  return false;
}

FastPathReport compare_fast_paths(const RingContext& ctx, size_t max_listed) {
  if (ctx.n != 2 && ctx.n != 3)
    throw Error(ErrorKind::DimensionUnsupported,
                "fast paths exist only for n = 2, 3");
  FastPathReport report;
  report.n = ctx.n;
  report.q = ctx.field.q;
  const uint64_t npairs = ctx.ring_size * ctx.ring_size;
  for (uint64_t code = 0; code < npairs; ++code) {
    if (is_unimodular_code(ctx, code)) continue;
    ModPair g = pair_decode(ctx, code);
    bool truth = is_free(ctx, g);
    bool fast = ctx.n == 2 ? fast_free_nonuni_n2(ctx.field, g)
                           : fast_free_nonuni_n3(ctx.field, g);
    bool fixed = ctx.n == 2 ? fast : fast_free_nonuni_n3_fixed(ctx.field, g);
    ++report.nonuni_pairs_checked;
    if (fast != truth) {
      ++report.printed_disagreement_count;
      if (report.printed_disagreements.size() < max_listed)
        report.printed_disagreements.push_back({code, fast, truth});
      else
        report.truncated = true;
    }
    if (fixed != truth) ++report.fixed_disagreement_count;
  }
  return report;
}

}  // namespace trimat_geom
