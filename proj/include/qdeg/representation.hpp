#pragma once

#include <vector>

#include "qdeg/matrix.hpp"
#include "qdeg/quiver.hpp"

namespace qdeg {

// A representation: one exact-rational matrix per arrow, of shape
// d_{target} x d_{source}. Values are immutable once built.
struct Rep {
  QuiverPtr quiver;
  DimVector dim;
  std::vector<Mat> mats;  // indexed like quiver->arrows()

  long dim_at(int vpos) const { return dim[vpos]; }
  long total_dim() const { return total(dim); }
  bool is_zero() const { return total_dim() == 0; }
};

inline bool same_quiver(const Rep& x, const Rep& y) {
  return x.quiver == y.quiver || *x.quiver == *y.quiver;
}

inline void check_rep(const Rep& r) {
  const Quiver& q = *r.quiver;
  if (int(r.dim.size()) != q.vertex_count() || int(r.mats.size()) != q.arrow_count())
    throw InternalError("representation shape mismatch");
  for (int k = 0; k < q.arrow_count(); ++k)
    if (r.mats[k].rows() != r.dim[q.tgt_pos(k)] || r.mats[k].cols() != r.dim[q.src_pos(k)])
      throw InternalError("arrow matrix shape mismatch");
}

inline Rep zero_rep(const QuiverPtr& q) {
  Rep r{q, DimVector(q->vertex_count(), 0), {}};
  for (int k = 0; k < q->arrow_count(); ++k) r.mats.emplace_back(0, 0);
  return r;
}

inline Rep simple_rep(const QuiverPtr& q, int vpos) {
  Rep r = zero_rep(q);
  r.dim[vpos] = 1;
  for (int k = 0; k < q->arrow_count(); ++k)
    r.mats[k] = Mat(r.dim[q->tgt_pos(k)], r.dim[q->src_pos(k)]);
  return r;
}

inline Rep direct_sum(const std::vector<Rep>& xs) {
  if (xs.empty()) throw Error("direct_sum of an empty list");
  Rep r{xs[0].quiver, DimVector(xs[0].quiver->vertex_count(), 0), {}};
  for (const auto& x : xs) {
    if (!same_quiver(xs[0], x)) throw Error("direct_sum over mismatched quivers");
    for (size_t i = 0; i < r.dim.size(); ++i) r.dim[i] += x.dim[i];
  }
  for (int k = 0; k < r.quiver->arrow_count(); ++k) {
    std::vector<Mat> blocks;
    blocks.reserve(xs.size());
    for (const auto& x : xs) blocks.push_back(x.mats[k]);
    r.mats.push_back(Mat::block_diag(blocks));
  }
  return r;
}

// One matrix per vertex, shape dst.dim x src.dim; intertwines all arrows.
using VMaps = std::vector<Mat>;

struct Morphism {
  Rep src, dst;
  VMaps maps;
};

inline bool intertwines(const Rep& x, const Rep& y, const VMaps& f) {
  const Quiver& q = *x.quiver;
  for (int k = 0; k < q.arrow_count(); ++k) {
    int s = q.src_pos(k), e = q.tgt_pos(k);
    if (!(f[e] * x.mats[k] - y.mats[k] * f[s]).is_zero()) return false;
  }
  return true;
}

inline Morphism make_morphism(const Rep& x, const Rep& y, VMaps f) {
  if (!same_quiver(x, y)) throw Error("morphism over mismatched quivers");
  for (int i = 0; i < x.quiver->vertex_count(); ++i)
    if (f[i].rows() != y.dim[i] || f[i].cols() != x.dim[i])
      throw InternalError("morphism vertex matrix shape mismatch");
  if (!intertwines(x, y, f)) throw InternalError("vertex maps do not intertwine");
  return Morphism{x, y, std::move(f)};
}

inline VMaps zero_vmaps(const Rep& x, const Rep& y) {
  VMaps f;
  for (size_t i = 0; i < x.dim.size(); ++i) f.emplace_back(int(y.dim[i]), int(x.dim[i]));
  return f;
}

inline VMaps identity_vmaps(const Rep& x) {
  VMaps f;
  for (long d : x.dim) f.push_back(Mat::identity(int(d)));
  return f;
}

inline VMaps compose(const VMaps& g, const VMaps& f) {  // g after f
  VMaps h;
  h.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i) h.push_back(g[i] * f[i]);
  return h;
}

inline bool vmaps_zero(const VMaps& f) {
  for (const auto& m : f)
    if (!m.is_zero()) return false;
  return true;
}

inline bool is_injective(const VMaps& f) {
  for (const auto& m : f)
    if (m.rank() != m.cols()) return false;
  return true;
}

inline bool is_surjective(const VMaps& f) {
  for (const auto& m : f)
    if (m.rank() != m.rows()) return false;
  return true;
}

// --- Hom spaces -----------------------------------------------------------
//
// A homomorphism f: X -> Y is a tuple of vertex matrices subject to
// f_{e(a)} X_a = Y_a f_{s(a)} for every arrow a. Flattening the unknowns
// row-major turns this into one big rational linear system; its nullspace
// is the Hom space.

namespace detail {

// Offsets of vec(f_i) inside the flattened unknown vector.
inline std::vector<int> hom_offsets(const Rep& x, const Rep& y, int* n_out) {
  std::vector<int> off(x.dim.size() + 1, 0);
  for (size_t i = 0; i < x.dim.size(); ++i)
    off[i + 1] = off[i] + int(x.dim[i] * y.dim[i]);
  *n_out = off[x.dim.size()];
  return off;
}

inline Mat hom_system(const Rep& x, const Rep& y) {
  const Quiver& q = *x.quiver;
  int unknowns = 0;
  std::vector<int> off = hom_offsets(x, y, &unknowns);
  int eqs = 0;
  for (int k = 0; k < q.arrow_count(); ++k)
    eqs += int(y.dim[q.tgt_pos(k)] * x.dim[q.src_pos(k)]);
  Mat sys(eqs, unknowns);
  int row0 = 0;
  for (int k = 0; k < q.arrow_count(); ++k) {
    const int s = q.src_pos(k), e = q.tgt_pos(k);
    const Mat& xa = x.mats[k];  // x.dim[e] x x.dim[s]
    const Mat& ya = y.mats[k];  // y.dim[e] x y.dim[s]
    const int ds = int(x.dim[s]), de = int(x.dim[e]);
    const int dse = int(y.dim[s]), dee = int(y.dim[e]);
    // equation block: f_e * X_a - Y_a * f_s = 0, entries (r, c) with
    // r < dee, c < ds. f_e contributes f_e[r][m] * X_a[m][c]; f_s
    // contributes -Y_a[r][m] * f_s[m][c].
    for (int r = 0; r < dee; ++r)
      for (int c = 0; c < ds; ++c) {
        int row = row0 + r * ds + c;
        for (int m = 0; m < de; ++m)
          if (xa.at(m, c) != 0) sys.at(row, off[e] + r * de + m) += xa.at(m, c);
        for (int m = 0; m < dse; ++m)
          if (ya.at(r, m) != 0) sys.at(row, off[s] + m * ds + c) -= ya.at(r, m);
      }
    row0 += dee * ds;
  }
  return sys;
}

inline VMaps unflatten_hom(const Rep& x, const Rep& y, const Mat& colvec) {
  int unknowns = 0;
  std::vector<int> off = hom_offsets(x, y, &unknowns);
  VMaps f;
  for (size_t i = 0; i < x.dim.size(); ++i) {
    Mat m(int(y.dim[i]), int(x.dim[i]));
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = colvec.at(off[i] + r * m.cols() + c, 0);
    f.push_back(std::move(m));
  }
  return f;
}

inline Mat flatten_hom(const Rep& x, const Rep& y, const VMaps& f) {
  int unknowns = 0;
  std::vector<int> off = hom_offsets(x, y, &unknowns);
  Mat v(unknowns, 1);
  for (size_t i = 0; i < x.dim.size(); ++i)
    for (int r = 0; r < f[i].rows(); ++r)
      for (int c = 0; c < f[i].cols(); ++c) v.at(off[i] + r * f[i].cols() + c, 0) = f[i].at(r, c);
  return v;
}

}  // namespace detail

inline long hom_dim(const Rep& x, const Rep& y) {
  if (!same_quiver(x, y)) throw Error("hom over mismatched quivers");
  int unknowns = 0;
  detail::hom_offsets(x, y, &unknowns);
  return unknowns - detail::hom_system(x, y).rank();
}

inline std::vector<Morphism> hom_space(const Rep& x, const Rep& y) {
  if (!same_quiver(x, y)) throw Error("hom over mismatched quivers");
  Mat ns = detail::hom_system(x, y).nullspace();
  std::vector<Morphism> basis;
  for (int j = 0; j < ns.cols(); ++j)
    basis.push_back(make_morphism(x, y, detail::unflatten_hom(x, y, ns.col(j))));
  return basis;
}

// Flattens a tuple of vertex matrices into one column vector (used to solve
// "is this map a combination of these maps" questions).
inline Mat flatten_vmaps(const VMaps& f) {
  int n = 0;
  for (const auto& m : f) n += m.rows() * m.cols();
  Mat v(n, 1);
  int off = 0;
  for (const auto& m : f)
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) v.at(off++, 0) = m.at(r, c);
  return v;
}

// Solves sum_j c_j elems[j] = target componentwise; nullopt if impossible.
inline std::optional<std::vector<Rat>> solve_combination(const std::vector<VMaps>& elems,
                                                         const VMaps& target) {
  Mat rhs = flatten_vmaps(target);
  Mat lhs(rhs.rows(), int(elems.size()));
  for (size_t j = 0; j < elems.size(); ++j) {
    Mat col = flatten_vmaps(elems[j]);
    lhs.set_block(0, int(j), col);
  }
  auto sol = lhs.solve(rhs);
  if (!sol) return std::nullopt;
  std::vector<Rat> c;
  for (size_t j = 0; j < elems.size(); ++j) c.push_back(sol->at(int(j), 0));
  return c;
}

inline VMaps combine(const std::vector<VMaps>& elems, const std::vector<Rat>& coeffs,
                     const VMaps& shape_like) {
  VMaps out;
  for (const auto& m : shape_like) out.emplace_back(m.rows(), m.cols());
  for (size_t j = 0; j < elems.size(); ++j) {
    if (coeffs[j] == 0) continue;
    for (size_t v = 0; v < out.size(); ++v) out[v] = out[v] + elems[j][v].scaled(coeffs[j]);
  }
  return out;
}

// --- Kernels and cokernels ------------------------------------------------

// Cokernel of f: X -> Y: the quotient representation together with the
// per-vertex projection matrices.
struct Cokernel {
  Rep rep;
  VMaps proj;  // Y -> coker
};

inline Cokernel cokernel(const Rep& x, const Rep& y, const VMaps& f) {
  const Quiver& q = *y.quiver;
  for (int i = 0; i < q.vertex_count(); ++i)
    if (f[i].rows() != y.dim[i] || f[i].cols() != x.dim[i])
      throw InternalError("cokernel: map shape mismatch");
  Cokernel c;
  c.rep.quiver = y.quiver;
  c.rep.dim.assign(q.vertex_count(), 0);
  std::vector<Mat> rinv(q.vertex_count());
  for (int i = 0; i < q.vertex_count(); ++i) {
    Mat p = f[i].left_nullspace();
    c.rep.dim[i] = p.rows();
    rinv[i] = p.rows() > 0 ? p.right_inverse() : Mat(p.cols(), 0);
    c.proj.push_back(std::move(p));
  }
  for (int k = 0; k < q.arrow_count(); ++k) {
    int s = q.src_pos(k), e = q.tgt_pos(k);
    c.rep.mats.push_back(c.proj[e] * y.mats[k] * rinv[s]);
  }
  check_rep(c.rep);
  if (!intertwines(y, c.rep, c.proj)) throw InternalError("cokernel projection fails to intertwine");
  return c;
}

// Kernel of f: X -> Y: the subrepresentation with its inclusion.
struct Kernel {
  Rep rep;
  VMaps incl;  // ker -> X
};

inline Kernel kernel(const Rep& x, const Rep& y, const VMaps& f) {
  const Quiver& q = *x.quiver;
  for (int i = 0; i < q.vertex_count(); ++i)
    if (f[i].rows() != y.dim[i] || f[i].cols() != x.dim[i])
      throw InternalError("kernel: map shape mismatch");
  Kernel k;
  k.rep.quiver = x.quiver;
  k.rep.dim.assign(q.vertex_count(), 0);
  for (int i = 0; i < q.vertex_count(); ++i) {
    Mat ns = f[i].nullspace();
    k.rep.dim[i] = ns.cols();
    k.incl.push_back(std::move(ns));
  }
  for (int a = 0; a < q.arrow_count(); ++a) {
    int s = q.src_pos(a), e = q.tgt_pos(a);
    auto sol = k.incl[e].solve(x.mats[a] * k.incl[s]);
    if (!sol) throw InternalError("kernel is not arrow-stable");
    k.rep.mats.push_back(*sol);
  }
  check_rep(k.rep);
  if (!intertwines(k.rep, x, k.incl)) throw InternalError("kernel inclusion fails to intertwine");
  return k;
}

}  // namespace qdeg
