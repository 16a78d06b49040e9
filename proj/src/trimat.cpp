#include "trimat_geom/trimat.hpp"

#include <algorithm>

namespace trimat_geom {

TriMatrix mat_zero(int n) {
  TriMatrix m;
  m.n = n;
  return m;
}

TriMatrix mat_identity(int n) {
  TriMatrix m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

TriMatrix mat_add(const FieldTable& f, const TriMatrix& a, const TriMatrix& b) {
  if (a.n != b.n)
    throw Error(ErrorKind::DimensionMismatch, "mat_add: dimension mismatch");
  TriMatrix r;
  r.n = a.n;
  for (int t = 0; t < TriMatrix::slot_count(a.n); ++t)
    r.e[t] = f.add_at(a.e[t], b.e[t]);
  return r;
}

TriMatrix mat_mul(const FieldTable& f, const TriMatrix& a, const TriMatrix& b) {
  if (a.n != b.n)
    throw Error(ErrorKind::DimensionMismatch, "mat_mul: dimension mismatch");
  TriMatrix r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j <= i; ++j) {
      uint8_t acc = 0;
      for (int k = j; k <= i; ++k)
        acc = f.add_at(acc, f.mul_at(a.e[TriMatrix::slot(i, k)],
                                     b.e[TriMatrix::slot(k, j)]));
      r.e[TriMatrix::slot(i, j)] = acc;
    }
  return r;
}

bool is_unit(const TriMatrix& a) {
  for (int i = 0; i < a.n; ++i)
    if (a.at(i, i) == 0) return false;
  return true;
}

bool in_radical(const TriMatrix& a) {
  for (int i = 0; i < a.n; ++i)
    if (a.at(i, i) != 0) return false;
  return true;
}

uint64_t mat_code(const FieldTable& f, const TriMatrix& m) {
  uint64_t code = 0, w = 1;
  for (int t = 0; t < TriMatrix::slot_count(m.n); ++t) {
    code += m.e[t] * w;
    w *= static_cast<uint64_t>(f.q);
  }
  return code;
}

TriMatrix mat_decode(const FieldTable& f, int n, uint64_t code) {
  TriMatrix m;
  m.n = n;
  for (int t = 0; t < TriMatrix::slot_count(n); ++t) {
    m.e[t] = static_cast<uint8_t>(code % f.q);
    code /= f.q;
  }
  return m;
}

std::string mat_to_string(const TriMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.n; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < m.n; ++j) {
      if (j) s += ",";
      s += std::to_string(static_cast<int>(m.at(i, j)));
    }
    s += "]";
  }
  s += "]";
  return s;
}

RingContext ring_context(int n, const FieldTable& field) {
  if (n < 2 || n > kMaxDim)
    throw Error(ErrorKind::DimensionUnsupported,
                "ring dimension " + std::to_string(n) + " unsupported");
  RingContext ctx;
  ctx.field = field;
  ctx.n = n;
  ctx.slots = TriMatrix::slot_count(n);
  ctx.qpow[0] = 1;
  for (int t = 1; t <= kMaxSlots; ++t)
    ctx.qpow[t] = ctx.qpow[t - 1] * static_cast<uint64_t>(field.q);
  ctx.ring_size = ctx.qpow[ctx.slots];

  ctx.elems.reserve(ctx.ring_size);
  ctx.diag_mask.reserve(ctx.ring_size);
  for (uint64_t code = 0; code < ctx.ring_size; ++code) {
    TriMatrix m = mat_decode(field, n, code);
    ctx.elems.push_back(m);
    uint8_t mask = 0;
    for (int i = 0; i < n; ++i)
      if (m.at(i, i) != 0) mask |= static_cast<uint8_t>(1u << i);
    ctx.diag_mask.push_back(mask);
    if (is_unit(m)) ctx.units.push_back(code);
    if (in_radical(m)) ctx.radical.push_back(code);
  }
  return ctx;
}

}  // namespace trimat_geom
