#pragma once

#include <optional>
#include <string>

#include "qdeg/category.hpp"
#include "qdeg/rng.hpp"

namespace qdeg {

// delta_{M,N}(X) = [N,X] - [M,X]; nonnegative whenever N degenerates from M.
inline long delta(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n,
                  const ModuleSpec& x) {
  return cat.hom(n, x) - cat.hom(m, x);
}

// delta'_{M,N}(X) = [X,N] - [X,M].
inline long delta_prime(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n,
                        const ModuleSpec& x) {
  return cat.hom(x, n) - cat.hom(x, m);
}

// Degeneration decision by the hom order, on both one-sided families. For
// Dynkin quivers this coincides with orbit-closure containment.
inline bool is_degeneration(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n) {
  if (cat.dim_of(m) != cat.dim_of(n)) return false;
  for (int k = 0; k < cat.root_count(); ++k) {
    ModuleSpec y = cat.unit_spec(k);
    if (cat.hom(y, n) < cat.hom(y, m)) return false;
    if (cat.hom(n, y) < cat.hom(m, y)) return false;
  }
  return true;
}

inline long orbit_dim(const ModuleCategory& cat, const ModuleSpec& m) {
  DimVector d = cat.dim_of(m);
  long g = 0;
  for (long x : d) g += x * x;
  return g - cat.hom(m, m);
}

inline long codim(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n) {
  if (!is_degeneration(cat, m, n)) throw Error("codim: not a degeneration");
  return cat.hom(n, n) - cat.hom(m, m);
}

// A checked degeneration pair with its codimension.
struct DegPair {
  ModuleSpec m, n;
  long codim = 0;
};

inline DegPair make_deg_pair(const ModuleCategory& cat, ModuleSpec m, ModuleSpec n) {
  if (!is_degeneration(cat, m, n)) throw Error("not a degeneration pair");
  long c = cat.hom(n, n) - cat.hom(m, m);
  if (c < 0 || (c == 0) != (m == n)) throw InternalError("codimension inconsistency");
  return DegPair{std::move(m), std::move(n), c};
}

struct SplitCommon {
  ModuleSpec m_red, n_red, common;
};

// Peels off the maximal common direct summand (componentwise minimum).
inline SplitCommon split_common(const ModuleSpec& m, const ModuleSpec& n) {
  ModuleSpec x = min_spec(m, n);
  return SplitCommon{m - x, n - x, x};
}

// All multiplicity vectors with the given dimension vector, in a fixed
// deterministic order.
inline std::vector<ModuleSpec> all_specs_with_dim(const ModuleCategory& cat, const DimVector& d) {
  std::vector<ModuleSpec> out;
  ModuleSpec cur = cat.zero_spec();
  DimVector rest = d;
  auto rec = [&](auto&& self, int k) -> void {
    if (total(rest) == 0) {
      out.push_back(cur);
      // trailing roots keep multiplicity zero
      return;
    }
    if (k == cat.root_count()) return;
    const DimVector& r = cat.root(k);
    long maxc = -1;
    {
      long bound = total(rest);  // any root has total >= 1
      maxc = bound;
      for (int i = 0; i < int(r.size()); ++i)
        if (r[i] > 0) maxc = std::min(maxc, rest[i] / r[i]);
    }
    for (long c = 0; c <= maxc; ++c) {
      if (c > 0)
        for (size_t i = 0; i < rest.size(); ++i) rest[i] -= r[i];
      cur.mult[k] = c;
      if (nonnegative(rest)) self(self, k + 1);
    }
    for (size_t i = 0; i < rest.size(); ++i) rest[i] += maxc * r[i];
    cur.mult[k] = 0;
  };
  rec(rec, 0);
  return out;
}

// The degeneration poset on one dimension vector: all orbits, cover edges
// labeled with their codimension.
struct DegPoset {
  DimVector d;
  std::vector<ModuleSpec> nodes;
  struct Edge {
    int from, to;  // from degenerates to `to` (orbit closure containment)
    long codim;
  };
  std::vector<Edge> cover_edges;
};

inline DegPoset deg_poset(const ModuleCategory& cat, const DimVector& d) {
  DegPoset p;
  p.d = d;
  p.nodes = all_specs_with_dim(cat, d);
  const int n = int(p.nodes.size());
  // hom vectors make the n^2 comparisons cheap
  std::vector<std::vector<long>> hv(n), hcv(n);
  for (int i = 0; i < n; ++i) {
    hv[i] = cat.hom_vector(p.nodes[i]);
    hcv[i] = cat.hom_covector(p.nodes[i]);
  }
  auto deg = [&](int i, int j) {
    for (int k = 0; k < cat.root_count(); ++k)
      if (hv[j][k] < hv[i][k] || hcv[j][k] < hcv[i][k]) return false;
    return true;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !deg(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && deg(i, k) && deg(k, j)) cover = false;
      if (cover)
        p.cover_edges.push_back({i, j, cat.hom(p.nodes[j], p.nodes[j]) - cat.hom(p.nodes[i], p.nodes[i])});
    }
  return p;
}

// --- Exact-sequence witnesses -------------------------------------------------
//
// A verified exact sequence 0 -> Z -> Z (+) M -> N -> 0 with a radical
// injection. Existence characterizes degeneration; the search below is a
// bounded, reproducible policy, and a miss is only inconclusive.

struct ZWitness {
  ModuleSpec z;
  Morphism f;        // realize(z) -> realize(z + m), radical and injective
  Rep coker;
  ModuleSpec coker_decomp;  // equals n
};

struct WitnessBudget {
  long max_mult = 3;   // cap on each multiplicity of Z
  int trials = 200;    // random combinations after the deterministic sweep
};

namespace detail {

// Candidate Z enumeration: entries <= max_mult, total dimension <= cap,
// ordered by total dimension then lexicographically.
inline std::vector<ModuleSpec> witness_candidates(const ModuleCategory& cat, long max_mult,
                                                  long dim_cap) {
  std::vector<ModuleSpec> cands;
  ModuleSpec cur = cat.zero_spec();
  auto rec = [&](auto&& self, int k, long dim_used) -> void {
    if (k == cat.root_count()) {
      if (!cur.is_zero()) cands.push_back(cur);
      return;
    }
    long rd = total(cat.root(k));
    for (long c = 0; c <= max_mult && dim_used + c * rd <= dim_cap; ++c) {
      cur.mult[k] = c;
      self(self, k + 1, dim_used + c * rd);
    }
    cur.mult[k] = 0;
  };
  rec(rec, 0, 0);
  std::sort(cands.begin(), cands.end(), [&](const ModuleSpec& a, const ModuleSpec& b) {
    long ta = cat.total_dim(a), tb = cat.total_dim(b);
    if (ta != tb) return ta < tb;
    return a.mult < b.mult;
  });
  return cands;
}

// Radical test for a map between realized modules: every block joining two
// slots that carry the same root must vanish (endomorphism rings are
// one-dimensional, so any nonzero such block is an isomorphism).
inline bool radical_between_realized(const ModuleCategory& cat, const ModuleSpec& a,
                                     const ModuleSpec& b, const VMaps& f) {
  std::vector<int> sa = cat.slot_roots(a), sb = cat.slot_roots(b);
  auto offa = cat.slot_offsets(a), offb = cat.slot_offsets(b);
  for (size_t i = 0; i < sa.size(); ++i)
    for (size_t j = 0; j < sb.size(); ++j) {
      if (sa[i] != sb[j]) continue;
      const DimVector& r = cat.root(sa[i]);
      for (int v = 0; v < cat.quiver().vertex_count(); ++v) {
        if (r[v] == 0) continue;
        if (!f[v].block(int(offb[j][v]), int(offa[i][v]), int(r[v]), int(r[v])).is_zero())
          return false;
      }
    }
  return true;
}

}  // namespace detail

inline std::optional<ZWitness> find_zwitness(const ModuleCategory& cat, const ModuleSpec& m,
                                             const ModuleSpec& n, const WitnessBudget& budget,
                                             uint64_t seed) {
  if (!is_degeneration(cat, m, n) || m == n)
    throw Error("find_zwitness: expects a proper degeneration pair");
  long dim_cap = 3 * cat.total_dim(m);
  Rng rng(seed);
  for (const ModuleSpec& z : detail::witness_candidates(cat, budget.max_mult, dim_cap)) {
    ModuleSpec zm = z + m;
    Rep zr = cat.realize(z), zmr = cat.realize(zm);
    std::vector<Morphism> basis = cat.hom_basis(z, zm);
    if (basis.empty()) continue;
    auto attempt = [&](const VMaps& f) -> std::optional<ZWitness> {
      if (!detail::radical_between_realized(cat, z, zm, f)) return std::nullopt;
      if (!is_injective(f)) return std::nullopt;
      Cokernel co = cokernel(zr, zmr, f);
      ModuleSpec cd = cat.decompose(co.rep);
      if (!(cd == n)) return std::nullopt;
      Morphism mor = make_morphism(zr, zmr, f);
      if (!in_radical(cat, mor)) return std::nullopt;  // belt over the block test
      return ZWitness{z, std::move(mor), std::move(co.rep), std::move(cd)};
    };
    for (const Morphism& b : basis)
      if (auto got = attempt(b.maps)) return got;
    for (int t = 0; t < budget.trials; ++t) {
      VMaps cand = zero_vmaps(zr, zmr);
      bool nonzero = false;
      for (const Morphism& b : basis) {
        long c = rng.range(-3, 3);
        if (c == 0) continue;
        nonzero = true;
        for (size_t v = 0; v < cand.size(); ++v) cand[v] = cand[v] + b.maps[v].scaled(Rat(c));
      }
      if (!nonzero) continue;
      if (auto got = attempt(cand)) return got;
    }
  }
  return std::nullopt;
}

}  // namespace qdeg
