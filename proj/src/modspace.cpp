#include "trimat_geom/modspace.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace trimat_geom {

namespace {

constexpr uint64_t kMaxCensusPairs = uint64_t{1} << 26;

// Product code of a*b without materialising the matrix.
uint64_t mul_code(const RingContext& ctx, const TriMatrix& a,
                  const TriMatrix& b) {
  const FieldTable& f = ctx.field;
  uint64_t code = 0;
  int t = 0;
  for (int i = 0; i < ctx.n; ++i)
    for (int j = 0; j <= i; ++j, ++t) {
      uint8_t acc = 0;
      for (int k = j; k <= i; ++k)
        acc = f.add_at(acc, f.mul_at(a.e[TriMatrix::slot(i, k)],
                                     b.e[TriMatrix::slot(k, j)]));
      code += acc * ctx.qpow[t];
    }
  return code;
}

void check_context(const RingContext& ctx, const ModPair& g) {
  if (g.x.n != ctx.n || g.y.n != ctx.n)
    throw Error(ErrorKind::ContextMismatch, "pair does not belong to this ring");
  for (int t = 0; t < ctx.slots; ++t)
    if (g.x.e[t] >= ctx.field.q || g.y.e[t] >= ctx.field.q)
      throw Error(ErrorKind::ContextMismatch, "pair entry outside field");
}

std::vector<uint64_t> submodule_elements(const RingContext& ctx,
                                         const TriMatrix& x,
                                         const TriMatrix& y) {
  std::vector<uint64_t> elems;
  elems.reserve(ctx.ring_size);
  for (const TriMatrix& a : ctx.elems)
    elems.push_back(mul_code(ctx, a, x) * ctx.ring_size + mul_code(ctx, a, y));
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

uint64_t min_unit_multiple(const RingContext& ctx, const TriMatrix& x,
                           const TriMatrix& y) {
  uint64_t best = UINT64_MAX;
  for (uint64_t u : ctx.units)
    best = std::min(best, action_code(ctx, ctx.elems[u], x, y));
  return best;
}

uint64_t order_from_ranks(const RingContext& ctx, const TriMatrix& x,
                          const TriMatrix& y) {
  const FieldTable& f = ctx.field;
  const int n = ctx.n;
  uint64_t order = 1;
  for (int i = 1; i <= n; ++i) {
    uint8_t m[kMaxDim][2 * kMaxDim];
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < i; ++c) {
        m[r][c] = x.at(r, c);
        m[r][i + c] = y.at(r, c);
      }
    int rank = 0;
    for (int c = 0; c < 2 * i && rank < i; ++c) {
      int pivot = -1;
      for (int r = rank; r < i; ++r)
        if (m[r][c] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      for (int c2 = 0; c2 < 2 * i; ++c2) std::swap(m[rank][c2], m[pivot][c2]);
      uint8_t lead_inv = f.inv_at(m[rank][c]);
      for (int r = rank + 1; r < i; ++r) {
        uint8_t factor = f.mul_at(m[r][c], lead_inv);
        if (factor == 0) continue;
        for (int c2 = c; c2 < 2 * i; ++c2)
          m[r][c2] = f.sub_at(m[r][c2], f.mul_at(factor, m[rank][c2]));
      }
      ++rank;
    }
    order *= ctx.qpow[rank];
  }
  return order;
}

struct Record {
  std::vector<uint64_t> elements;
  uint64_t generator;
};

void finish_submodule(const RingContext& ctx, Submodule& s, uint64_t found_gen) {
  s.n = ctx.n;
  s.q = ctx.field.q;
  s.order = s.elements.size();
  s.is_free = s.order == ctx.ring_size;
  if (s.is_free) {
    ModPair g = pair_decode(ctx, found_gen);
    s.canonical_generator = min_unit_multiple(ctx, g.x, g.y);
    s.is_unimodular_generated = false;
    for (uint64_t e : s.elements)
      if (is_unimodular_code(ctx, e)) {
        s.is_unimodular_generated = true;
        break;
      }
  } else {
    s.canonical_generator = s.elements.front();
    for (uint64_t e : s.elements) {
      ModPair h = pair_decode(ctx, e);
      if (order_from_ranks(ctx, h.x, h.y) == s.order) {
        s.canonical_generator = e;
        break;
      }
    }
    s.is_unimodular_generated = false;
  }
  s.is_nonunimodular_free = s.is_free && !s.is_unimodular_generated;
}

}  // namespace

uint64_t pair_code(const RingContext& ctx, const ModPair& g) {
  return mat_code(ctx.field, g.x) * ctx.ring_size + mat_code(ctx.field, g.y);
}

ModPair pair_decode(const RingContext& ctx, uint64_t code) {
  ModPair g;
  g.x = mat_decode(ctx.field, ctx.n, code / ctx.ring_size);
  g.y = mat_decode(ctx.field, ctx.n, code % ctx.ring_size);
  return g;
}

std::string pair_to_string(const RingContext& ctx, uint64_t code) {
  ModPair g = pair_decode(ctx, code);
  return "(" + mat_to_string(g.x) + "," + mat_to_string(g.y) + ")";
}

bool is_unimodular(const ModPair& g) {
  for (int i = 0; i < g.x.n; ++i)
    if (g.x.at(i, i) == 0 && g.y.at(i, i) == 0) return false;
  return true;
}

bool is_unimodular_code(const RingContext& ctx, uint64_t code) {
  return static_cast<uint8_t>(ctx.diag_mask[code / ctx.ring_size] |
                              ctx.diag_mask[code % ctx.ring_size]) ==
         ctx.full_diag_mask();
}

uint64_t action_code(const RingContext& ctx, const TriMatrix& a,
                     const TriMatrix& x, const TriMatrix& y) {
  return mul_code(ctx, a, x) * ctx.ring_size + mul_code(ctx, a, y);
}

bool Submodule::has_element(uint64_t code) const {
  return std::binary_search(elements.begin(), elements.end(), code);
}

uint64_t submodule_order(const RingContext& ctx, const ModPair& g) {
  check_context(ctx, g);
  return order_from_ranks(ctx, g.x, g.y);
}

bool is_free(const RingContext& ctx, const ModPair& g) {
  return submodule_order(ctx, g) == ctx.ring_size;
}

Submodule cyclic_submodule(const RingContext& ctx, const ModPair& g) {
  check_context(ctx, g);
  Submodule s;
  s.elements = submodule_elements(ctx, g.x, g.y);
  finish_submodule(ctx, s, pair_code(ctx, g));
  return s;
}

bool submodule_contains(const Submodule& a, const Submodule& b) {
  if (a.n != b.n || a.q != b.q)
    throw Error(ErrorKind::ContextMismatch, "submodules from different modules");
  if (b.elements.size() > a.elements.size()) return false;
  return std::includes(a.elements.begin(), a.elements.end(),
                       b.elements.begin(), b.elements.end());
}

GeneratorOrbit generator_orbit(const RingContext& ctx, const ModPair& g) {
  check_context(ctx, g);
  GeneratorOrbit orbit;
  orbit.pairs.reserve(ctx.units.size());
  for (uint64_t u : ctx.units)
    orbit.pairs.push_back(action_code(ctx, ctx.elems[u], g.x, g.y));
  std::sort(orbit.pairs.begin(), orbit.pairs.end());
  orbit.pairs.erase(std::unique(orbit.pairs.begin(), orbit.pairs.end()),
                    orbit.pairs.end());
  orbit.complete = is_free(ctx, g);
  return orbit;
}

bool is_outlier(const RingContext& ctx, const std::vector<Submodule>& line,
                const ModPair& g) {
  uint64_t code = pair_code(ctx, g);
  for (const Submodule& point : line)
    if (point.has_element(code)) return false;
  return true;
}

uint64_t fingerprint_elements(const std::vector<uint64_t>& elements) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (uint64_t e : elements) {
    for (int b = 0; b < 8; ++b) {
      h ^= (e >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

int ModuleCensus::find_elements(const std::vector<uint64_t>& elements) const {
  auto it = by_hash_.find(fingerprint_elements(elements));
  if (it == by_hash_.end()) return -1;
  for (int id : it->second)
    if (subs[id].elements == elements) return id;
  return -1;
}

int ModuleCensus::id_of_generator(const RingContext& ctx, uint64_t pair) const {
  ModPair g = pair_decode(ctx, pair);
  return find_elements(submodule_elements(ctx, g.x, g.y));
}

ModuleCensus enumerate_submodules(const RingContext& ctx, int workers) {
  const uint64_t npairs = ctx.ring_size * ctx.ring_size;
  if (npairs > kMaxCensusPairs)
    throw Error(ErrorKind::EnumerationTooLarge,
                "pair space of size " + std::to_string(npairs) +
                    " is too large to enumerate");
  if (workers < 1) workers = 1;

  std::vector<std::atomic<uint64_t>> claimed((npairs + 63) / 64);
  for (auto& w : claimed) w.store(0, std::memory_order_relaxed);
  auto is_claimed = [&](uint64_t c) {
    return (claimed[c >> 6].load(std::memory_order_relaxed) >> (c & 63)) & 1;
  };
  auto claim = [&](uint64_t c) {
    claimed[c >> 6].fetch_or(uint64_t{1} << (c & 63),
                             std::memory_order_relaxed);
  };

  std::vector<std::vector<Record>> locals(workers);
  std::atomic<uint64_t> next{0};
  const uint64_t chunk = 2048;

  auto sweep = [&](int wi) {
    std::vector<Record>& local = locals[wi];
    for (;;) {
      uint64_t begin = next.fetch_add(chunk);
      if (begin >= npairs) break;
      uint64_t end = std::min(begin + chunk, npairs);
      for (uint64_t code = begin; code < end; ++code) {
        if (is_claimed(code)) continue;
        ModPair g = pair_decode(ctx, code);
        Record rec;
        rec.elements = submodule_elements(ctx, g.x, g.y);
        rec.generator = code;
        for (uint64_t u : ctx.units)
          claim(action_code(ctx, ctx.elems[u], g.x, g.y));
        local.push_back(std::move(rec));
      }
    }
  };

  if (workers == 1) {
    sweep(0);
  } else {
    std::vector<std::thread> threads;
    for (int wi = 0; wi < workers; ++wi) threads.emplace_back(sweep, wi);
    for (auto& t : threads) t.join();
  }

  std::vector<Record> records;
  for (auto& local : locals)
    for (auto& r : local) records.push_back(std::move(r));
  std::sort(records.begin(), records.end(),
            [](const Record& a, const Record& b) {
              if (a.elements != b.elements) return a.elements < b.elements;
              return a.generator < b.generator;
            });
  records.erase(std::unique(records.begin(), records.end(),
                            [](const Record& a, const Record& b) {
                              return a.elements == b.elements;
                            }),
                records.end());

  ModuleCensus census;
  census.n = ctx.n;
  census.q = ctx.field.q;
  census.ring_size = ctx.ring_size;
  census.subs.resize(records.size());

  std::atomic<size_t> next_rec{0};
  auto finish = [&]() {
    for (;;) {
      size_t i = next_rec.fetch_add(1);
      if (i >= records.size()) break;
      Submodule& s = census.subs[i];
      s.elements = std::move(records[i].elements);
      finish_submodule(ctx, s, records[i].generator);
    }
  };
  if (workers == 1) {
    finish();
  } else {
    std::vector<std::thread> threads;
    for (int wi = 0; wi < workers; ++wi) threads.emplace_back(finish);
    for (auto& t : threads) t.join();
  }

  for (int id = 0; id < census.size(); ++id)
    census.by_hash_[fingerprint_elements(census.subs[id].elements)].push_back(id);
  return census;
}

}  // namespace trimat_geom
