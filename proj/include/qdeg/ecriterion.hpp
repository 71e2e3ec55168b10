#pragma once

#include <map>

#include "qdeg/cocycle.hpp"
#include "qdeg/degeneration.hpp"

namespace qdeg {

// F = indecomposables with delta_{M,N} = 0, F' = those with delta'_{M,N} = 0.
// delta is additive over direct sums, so the kernel conditions over all
// modules reduce to these generators.
inline std::pair<std::vector<int>, std::vector<int>> f_sets(const ModuleCategory& cat,
                                                            const ModuleSpec& m,
                                                            const ModuleSpec& n) {
  std::vector<int> f, fp;
  for (int k = 0; k < cat.root_count(); ++k) {
    ModuleSpec y = cat.unit_spec(k);
    if (delta(cat, m, n, y) == 0) f.push_back(k);
    if (delta_prime(cat, m, n, y) == 0) fp.push_back(k);
  }
  return {f, fp};
}

// Reduction of a cocycle space modulo its coboundaries: R annihilates the
// coboundaries and has full rank on the quotient, so "z is a coboundary"
// becomes "R z = 0". Cached per (module, root) by the sweep drivers.
struct ExtReduction {
  CocycleSpace space;
  Mat reducer;  // ext_dim x space.dim
};

inline ExtReduction make_ext_reduction(const Rep& v, const Rep& u) {
  CocycleSpace cs(v, u);
  Mat cob = coboundary_basis(cs);
  return ExtReduction{std::move(cs), cob.left_nullspace()};
}

class ExtReductionCache {
 public:
  explicit ExtReductionCache(const ModuleCategory& cat) : cat_(cat) {}

  // Reduction for (realize(v), Y_x): Ext(V, Y_x) data keyed by v.
  const ExtReduction& post(const ModuleSpec& v, int x_root) {
    auto key = std::make_pair(v.mult, x_root);
    auto it = post_.find(key);
    if (it == post_.end())
      it = post_.emplace(key, make_ext_reduction(cat_.realize(v), cat_.indec(x_root))).first;
    return it->second;
  }
  // Reduction for (Y_y, realize(u)): Ext(Y_y, U) data keyed by u.
  const ExtReduction& pre(int y_root, const ModuleSpec& u) {
    auto key = std::make_pair(u.mult, y_root);
    auto it = pre_.find(key);
    if (it == pre_.end())
      it = pre_.emplace(key, make_ext_reduction(cat_.indec(y_root), cat_.realize(u))).first;
    return it->second;
  }

 private:
  const ModuleCategory& cat_;
  std::map<std::pair<std::vector<long>, int>, ExtReduction> post_, pre_;
};

// E_{M,N}(V,U): the subspace of Ext^1(V,U) killed by every map induced by
// homomorphisms U -> X (X in F) and Y -> V (Y in F'). Computed on the
// representative cocycles; each induced map is the cocycle-level push/pull
// followed by reduction modulo coboundaries.
struct CalE {
  long dim = 0;
  ExtQuotient ext;               // of (V, U)
  std::vector<Mat> basis;        // flat cocycle columns spanning E mod coboundaries
};

inline CalE cal_e(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n,
                  const ModuleSpec& v, const ModuleSpec& u, ExtReductionCache* cache = nullptr) {
  if (!is_degeneration(cat, m, n)) throw Error("cal_e: not a degeneration pair");
  Rep vr = cat.realize(v), ur = cat.realize(u);
  ExtQuotient eq = ext_quotient(vr, ur);
  CalE out{0, std::move(eq), {}};
  const int e = out.ext.ext_dim;
  if (e == 0) return out;

  auto [fs, fps] = f_sets(cat, m, n);
  std::optional<ExtReductionCache> local;
  if (!cache) {
    local.emplace(cat);
    cache = &*local;
  }

  Mat constraints(0, e);
  auto add_rows = [&](const Mat& rows) {
    constraints = constraints.rows() == 0 ? rows : Mat::vcat(constraints, rows);
  };
  for (int x : fs) {
    const ExtReduction& red = cache->post(v, x);
    if (red.reducer.rows() == 0) continue;  // Ext(V, Y_x) = 0: no condition
    for (const Morphism& f : cat.hom_basis(u, cat.unit_spec(x))) {
      Mat rows(red.reducer.rows(), e);
      for (int k = 0; k < e; ++k) {
        Mat img = postcompose_cocycle(out.ext.space, red.space, f, out.ext.reps[k]);
        rows.set_block(0, k, red.reducer * img);
      }
      if (!rows.is_zero()) add_rows(rows);
    }
  }
  for (int y : fps) {
    const ExtReduction& red = cache->pre(y, u);
    if (red.reducer.rows() == 0) continue;
    for (const Morphism& g : cat.hom_basis(cat.unit_spec(y), v)) {
      Mat rows(red.reducer.rows(), e);
      for (int k = 0; k < e; ++k) {
        Mat img = precompose_cocycle(out.ext.space, red.space, g, out.ext.reps[k]);
        rows.set_block(0, k, red.reducer * img);
      }
      if (!rows.is_zero()) add_rows(rows);
    }
  }

  Mat ns = constraints.rows() == 0 ? Mat::identity(e) : constraints.nullspace();
  out.dim = ns.cols();
  for (int j = 0; j < ns.cols(); ++j) {
    Mat z(out.ext.space.dim, 1);
    for (int k = 0; k < e; ++k)
      if (ns.at(k, j) != 0) z = z + out.ext.reps[k].scaled(ns.at(k, j));
    out.basis.push_back(std::move(z));
  }
  return out;
}

struct GenCriterionResult {
  long e_dim = 0;
  long codim = 0;
  bool regular_certified = false;
};

// dim E_{M,N}(N,N) >= [N,N] - [M,M] always; equality certifies regularity.
inline GenCriterionResult gen_criterion(const ModuleCategory& cat, const ModuleSpec& m,
                                        const ModuleSpec& n, ExtReductionCache* cache = nullptr) {
  long c = codim(cat, m, n);
  CalE e = cal_e(cat, m, n, n, n, cache);
  if (e.dim < c) throw InternalError("gen_criterion: E-dimension below the codimension");
  return GenCriterionResult{e.dim, c, e.dim == c};
}

}  // namespace qdeg
