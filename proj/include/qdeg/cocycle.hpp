#pragma once

#include "qdeg/ses.hpp"

namespace qdeg {

// Cocycles for a relation-free path algebra, in normalized form: vertex
// components vanish, so a cocycle V -> U is exactly one matrix per arrow,
// of shape u_{e(a)} x v_{s(a)}, and the cocycle group is the plain product
// of those matrix spaces. Coboundaries are the maps h_e V_a - U_a h_s for
// vertex tuples h; Ext^1(V,U) is the quotient.

struct CocycleSpace {
  Rep v, u;
  std::vector<int> arrow_off;  // offset of each arrow block in the flat vector
  int dim = 0;

  CocycleSpace(Rep v_, Rep u_) : v(std::move(v_)), u(std::move(u_)) {
    if (!same_quiver(v, u)) throw Error("cocycle space over mismatched quivers");
    const Quiver& q = *v.quiver;
    for (int k = 0; k < q.arrow_count(); ++k) {
      arrow_off.push_back(dim);
      dim += int(u.dim[q.tgt_pos(k)] * v.dim[q.src_pos(k)]);
    }
    arrow_off.push_back(dim);
  }

  std::vector<Mat> unflatten(const Mat& z) const {
    const Quiver& q = *v.quiver;
    std::vector<Mat> comps;
    for (int k = 0; k < q.arrow_count(); ++k) {
      int rows = int(u.dim[q.tgt_pos(k)]), cols = int(v.dim[q.src_pos(k)]);
      Mat m(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = z.at(arrow_off[k] + r * cols + c, 0);
      comps.push_back(std::move(m));
    }
    return comps;
  }

  Mat flatten(const std::vector<Mat>& comps) const {
    Mat z(dim, 1);
    const Quiver& q = *v.quiver;
    for (int k = 0; k < q.arrow_count(); ++k) {
      int cols = int(v.dim[q.src_pos(k)]);
      for (int r = 0; r < comps[k].rows(); ++r)
        for (int c = 0; c < cols; ++c) z.at(arrow_off[k] + r * cols + c, 0) = comps[k].at(r, c);
    }
    return z;
  }
};

// The elementary cocycles: one basis column per matrix entry per arrow.
inline std::vector<Mat> cocycle_basis(const CocycleSpace& cs) {
  std::vector<Mat> basis;
  for (int k = 0; k < cs.dim; ++k) {
    Mat z(cs.dim, 1);
    z.at(k, 0) = 1;
    basis.push_back(std::move(z));
  }
  return basis;
}

// Matrix of h |-> (h_e V_a - U_a h_s)_a from the vertex-tuple space into the
// cocycle space. Its kernel is Hom(V,U), its image the coboundaries.
inline Mat coboundary_map(const CocycleSpace& cs) {
  const Quiver& q = *cs.v.quiver;
  std::vector<int> hoff(q.vertex_count() + 1, 0);
  for (int i = 0; i < q.vertex_count(); ++i)
    hoff[i + 1] = hoff[i] + int(cs.u.dim[i] * cs.v.dim[i]);
  Mat m(cs.dim, hoff[q.vertex_count()]);
  for (int k = 0; k < q.arrow_count(); ++k) {
    const int s = q.src_pos(k), e = q.tgt_pos(k);
    const Mat& va = cs.v.mats[k];
    const Mat& ua = cs.u.mats[k];
    const int vs = int(cs.v.dim[s]), ve = int(cs.v.dim[e]);
    const int us = int(cs.u.dim[s]), ue = int(cs.u.dim[e]);
    // block row (r, c), r < ue, c < vs:
    //   (h_e V_a)[r][c] = sum_m h_e[r][m] va[m][c]
    //   (U_a h_s)[r][c] = sum_m ua[r][m] h_s[m][c]
    for (int r = 0; r < ue; ++r)
      for (int c = 0; c < vs; ++c) {
        int row = cs.arrow_off[k] + r * vs + c;
        for (int mm = 0; mm < ve; ++mm)
          if (va.at(mm, c) != 0) m.at(row, hoff[e] + r * ve + mm) += va.at(mm, c);
        for (int mm = 0; mm < us; ++mm)
          if (ua.at(r, mm) != 0) m.at(row, hoff[s] + mm * vs + c) -= ua.at(r, mm);
      }
  }
  return m;
}

// Basis of the coboundary subspace, as columns.
inline Mat coboundary_basis(const CocycleSpace& cs) {
  Mat full = coboundary_map(cs);
  Mat tmp = full;
  std::vector<int> piv = tmp.rref();
  Mat basis(cs.dim, int(piv.size()));
  for (size_t j = 0; j < piv.size(); ++j) basis.set_block(0, int(j), full.col(piv[j]));
  return basis;
}

// Ext^1(V,U) presented by representative cocycles completing the coboundary
// basis. ext_dim always cross-checks against the hom/Euler count.
struct ExtQuotient {
  CocycleSpace space;
  Mat cob;                    // coboundary basis, columns
  std::vector<Mat> reps;      // representative cocycles (flat columns)
  int ext_dim = 0;
};

inline ExtQuotient ext_quotient(const Rep& v, const Rep& u) {
  CocycleSpace cs(v, u);
  Mat cob = coboundary_basis(cs);
  ExtQuotient eq{cs, cob, {}, cs.dim - cob.cols()};
  long expected = hom_dim(v, u) - euler_form(*v.quiver, v.dim, u.dim);
  if (eq.ext_dim != expected)
    throw InternalError("cocycle quotient disagrees with the hom/Euler Ext count");
  // extend the coboundary basis by elementary cocycles: the extra pivot
  // columns of [cob | I] are the representatives.
  Mat aug = Mat::hcat(cob, Mat::identity(cs.dim));
  Mat tmp = aug;
  std::vector<int> piv = tmp.rref();
  for (int p : piv)
    if (p >= cob.cols()) eq.reps.push_back(aug.col(p));
  if (int(eq.reps.size()) != eq.ext_dim) throw InternalError("ext representative count mismatch");
  return eq;
}

// The extension attached to a cocycle: middle has spaces U_i (+) V_i and
// arrow matrices [[U_a, Z_a], [0, V_a]], with the canonical block maps.
inline Ses sequence_of(const CocycleSpace& cs, const Mat& z) {
  const Quiver& q = *cs.v.quiver;
  std::vector<Mat> comps = cs.unflatten(z);
  Rep w;
  w.quiver = cs.v.quiver;
  for (int i = 0; i < q.vertex_count(); ++i) w.dim.push_back(cs.u.dim[i] + cs.v.dim[i]);
  for (int k = 0; k < q.arrow_count(); ++k) {
    int s = q.src_pos(k), e = q.tgt_pos(k);
    Mat m(int(w.dim[e]), int(w.dim[s]));
    m.set_block(0, 0, cs.u.mats[k]);
    m.set_block(0, int(cs.u.dim[s]), comps[k]);
    m.set_block(int(cs.u.dim[e]), int(cs.u.dim[s]), cs.v.mats[k]);
    w.mats.push_back(std::move(m));
  }
  VMaps inj, surj;
  for (int i = 0; i < q.vertex_count(); ++i) {
    Mat a(int(w.dim[i]), int(cs.u.dim[i]));
    a.set_block(0, 0, Mat::identity(int(cs.u.dim[i])));
    inj.push_back(std::move(a));
    Mat b(int(cs.v.dim[i]), int(w.dim[i]));
    b.set_block(0, int(cs.u.dim[i]), Mat::identity(int(cs.v.dim[i])));
    surj.push_back(std::move(b));
  }
  return make_ses(cs.u, w, cs.v, std::move(inj), std::move(surj));
}

inline bool is_coboundary(const ExtQuotient& eq, const Mat& z) {
  return eq.cob.in_col_span(z);
}

// Ext^1(V, f) on normalized cocycles: postcompose every arrow component.
// This is what the pushout does to the extension class.
inline Mat postcompose_cocycle(const CocycleSpace& from, const CocycleSpace& to, const Morphism& f,
                               const Mat& z) {
  const Quiver& q = *from.v.quiver;
  std::vector<Mat> comps = from.unflatten(z);
  std::vector<Mat> out;
  for (int k = 0; k < q.arrow_count(); ++k) out.push_back(f.maps[q.tgt_pos(k)] * comps[k]);
  return to.flatten(out);
}

// Ext^1(g, U): precompose every arrow component (pullback on classes).
inline Mat precompose_cocycle(const CocycleSpace& from, const CocycleSpace& to, const Morphism& g,
                              const Mat& z) {
  const Quiver& q = *from.v.quiver;
  std::vector<Mat> comps = from.unflatten(z);
  std::vector<Mat> out;
  for (int k = 0; k < q.arrow_count(); ++k) out.push_back(comps[k] * g.maps[q.src_pos(k)]);
  return to.flatten(out);
}

}  // namespace qdeg
