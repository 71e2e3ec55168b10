#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "qdeg/representation.hpp"

namespace qdeg {

// Multiplicity vector over the positive-root order of a fixed category.
struct ModuleSpec {
  std::vector<long> mult;

  bool operator==(const ModuleSpec&) const = default;
  bool is_zero() const {
    for (long m : mult)
      if (m != 0) return false;
    return true;
  }
  ModuleSpec operator+(const ModuleSpec& o) const {
    ModuleSpec r = *this;
    for (size_t k = 0; k < mult.size(); ++k) r.mult[k] += o.mult[k];
    return r;
  }
  ModuleSpec operator-(const ModuleSpec& o) const {
    ModuleSpec r = *this;
    for (size_t k = 0; k < mult.size(); ++k) {
      r.mult[k] -= o.mult[k];
      if (r.mult[k] < 0) throw InternalError("negative multiplicity");
    }
    return r;
  }
};

inline ModuleSpec min_spec(const ModuleSpec& a, const ModuleSpec& b) {
  ModuleSpec r = a;
  for (size_t k = 0; k < r.mult.size(); ++k) r.mult[k] = std::min(a.mult[k], b.mult[k]);
  return r;
}

inline bool disjoint(const ModuleSpec& a, const ModuleSpec& b) {
  return min_spec(a, b).is_zero();
}

namespace detail {

// Cokernel reflection at a source vertex: reverses the arrows at `vid` and
// replaces the vertex space by the cokernel of the combined outgoing map.
// This is the only functor direction the construction below needs.
inline Rep reflect_source(const Rep& r, int vid) {
  const Quiver& q = *r.quiver;
  const int p = q.vpos(vid);
  std::vector<int> out;
  for (int k = 0; k < q.arrow_count(); ++k) {
    if (q.tgt_pos(k) == p) throw InternalError("reflect_source: vertex is not a source");
    if (q.src_pos(k) == p) out.push_back(k);
  }
  Mat stacked(0, int(r.dim[p]));
  std::vector<int> offs;
  for (int k : out) {
    offs.push_back(stacked.rows());
    stacked = Mat::vcat(stacked, r.mats[k]);
  }
  Mat proj = stacked.left_nullspace();  // rows: new space at p

  Rep res;
  res.quiver = std::make_shared<Quiver>(q.reversed_at(vid));
  res.dim = r.dim;
  res.dim[p] = proj.rows();
  res.mats.resize(q.arrow_count());
  for (int k = 0; k < q.arrow_count(); ++k) {
    if (q.src_pos(k) != p) {
      res.mats[k] = r.mats[k];
      continue;
    }
    size_t j = std::find(out.begin(), out.end(), k) - out.begin();
    int tp = q.tgt_pos(k);
    res.mats[k] = proj.block(0, offs[j], proj.rows(), int(r.dim[tp]));
  }
  check_rep(res);
  return res;
}

// Admissible sink-first ordering: v1 is a sink, v2 is a sink once the arrows
// at v1 flip, and so on. Exists for any acyclic quiver.
inline std::vector<int> sink_order(const Quiver& q) {
  const int n = q.vertex_count();
  std::vector<int> outdeg(n, 0);
  for (int k = 0; k < q.arrow_count(); ++k) ++outdeg[q.src_pos(k)];
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && outdeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) throw Error("quiver has a directed cycle");
    done[pick] = true;
    order.push_back(pick);
    for (int k = 0; k < q.arrow_count(); ++k)
      if (q.tgt_pos(k) == pick && !done[q.src_pos(k)]) --outdeg[q.src_pos(k)];
  }
  return order;
}

}  // namespace detail

// Builds the indecomposable with the given root as dimension vector: walk the
// root down to a unit vector along the admissible sink sequence, then apply
// the inverse reflections to the corresponding simple. Verified afterwards by
// the one-dimensional endomorphism check.
inline Rep indecomposable(const QuiverPtr& q, const DimVector& root) {
  if (tits_form(*q, root) != 1 || !nonnegative(root) || total(root) == 0)
    throw Error("not a positive root of this quiver");
  std::vector<int> order = detail::sink_order(*q);
  const int n = q->vertex_count();

  std::vector<Quiver> quivers = {*q};
  std::vector<int> reflected_at;  // vertex position used at each step
  DimVector gamma = root;
  int stop_vertex = -1;
  for (int it = 0; it < 64 * n * n && stop_vertex < 0; ++it) {
    int p = order[it % n];
    DimVector unit(n, 0);
    unit[p] = 1;
    if (gamma == unit) {
      stop_vertex = p;
      break;
    }
    gamma = reflect(quivers.back(), gamma, p);
    if (!nonnegative(gamma)) throw InternalError("reflection walk left the positive roots");
    reflected_at.push_back(p);
    quivers.push_back(quivers.back().reversed_at(quivers.back().vertex_id(p)));
  }
  if (stop_vertex < 0) throw InternalError("reflection walk did not terminate");

  Rep v = simple_rep(std::make_shared<Quiver>(quivers[reflected_at.size()]), stop_vertex);
  for (int u = int(reflected_at.size()) - 1; u >= 0; --u) {
    v = detail::reflect_source(v, quivers[u].vertex_id(reflected_at[u]));
    if (!(*v.quiver == quivers[u])) throw InternalError("reflection walk lost the orientation");
  }
  v.quiver = q;
  if (v.dim != root) throw InternalError("reflection functor produced a wrong dimension vector");
  if (hom_dim(v, v) != 1) throw InternalError("constructed module is not indecomposable");
  return v;
}

// Everything about mod A for one Dynkin quiver, built once and immutable:
// the positive roots in their canonical order, one indecomposable per root,
// the hom table, hom bases, and the directedness order. Safe for concurrent
// reads.
class ModuleCategory {
 public:
  explicit ModuleCategory(Quiver quiver) : q_(std::make_shared<Quiver>(std::move(quiver))) {
    auto t = classify(*q_);
    if (!t) throw Error("not a Dynkin quiver");
    type_ = *t;
    roots_ = positive_roots(*q_);
    for (const auto& r : roots_) ind_.push_back(indecomposable(q_, r));
    const int r = root_count();
    hom_.assign(r, std::vector<long>(r, 0));
    hom_bases_.assign(r, std::vector<std::vector<Morphism>>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        hom_bases_[i][j] = hom_space(ind_[i], ind_[j]);
        hom_[i][j] = long(hom_bases_[i][j].size());
      }
    topo_ = directedness_order();
    topo_pos_.resize(r);
    for (int i = 0; i < r; ++i) topo_pos_[topo_[i]] = i;
  }

  const Quiver& quiver() const { return *q_; }
  QuiverPtr quiver_ptr() const { return q_; }
  DynkinType type() const { return type_; }
  int root_count() const { return int(roots_.size()); }
  const std::vector<DimVector>& roots() const { return roots_; }
  const DimVector& root(int k) const { return roots_[k]; }
  const Rep& indec(int k) const { return ind_[k]; }
  long hom_ind(int i, int j) const { return hom_[i][j]; }
  const std::vector<Morphism>& hom_basis_ind(int i, int j) const { return hom_bases_[i][j]; }
  const std::vector<int>& topo_order() const { return topo_; }
  int topo_pos(int root_idx) const { return topo_pos_[root_idx]; }

  ModuleSpec zero_spec() const { return ModuleSpec{std::vector<long>(roots_.size(), 0)}; }
  ModuleSpec unit_spec(int k) const {
    ModuleSpec s = zero_spec();
    s.mult[k] = 1;
    return s;
  }

  DimVector dim_of(const ModuleSpec& s) const {
    DimVector d(q_->vertex_count(), 0);
    for (size_t k = 0; k < s.mult.size(); ++k)
      for (int i = 0; i < q_->vertex_count(); ++i) d[i] += s.mult[k] * roots_[k][i];
    return d;
  }
  long total_dim(const ModuleSpec& s) const { return total(dim_of(s)); }

  // s(L): number of indecomposable summands, with multiplicity.
  long summand_count(const ModuleSpec& s) const {
    return std::accumulate(s.mult.begin(), s.mult.end(), 0L);
  }

  long hom(const ModuleSpec& a, const ModuleSpec& b) const {
    long s = 0;
    for (size_t i = 0; i < a.mult.size(); ++i) {
      if (a.mult[i] == 0) continue;
      for (size_t j = 0; j < b.mult.size(); ++j)
        if (b.mult[j] != 0) s += a.mult[i] * b.mult[j] * hom_[i][j];
    }
    return s;
  }

  // [a, Y_j] for every root j at once.
  std::vector<long> hom_vector(const ModuleSpec& a) const {
    std::vector<long> v(roots_.size(), 0);
    for (size_t i = 0; i < a.mult.size(); ++i)
      if (a.mult[i] != 0)
        for (size_t j = 0; j < roots_.size(); ++j) v[j] += a.mult[i] * hom_[i][j];
    return v;
  }
  // [Y_j, a] for every root j.
  std::vector<long> hom_covector(const ModuleSpec& a) const {
    std::vector<long> v(roots_.size(), 0);
    for (size_t j = 0; j < a.mult.size(); ++j)
      if (a.mult[j] != 0)
        for (size_t i = 0; i < roots_.size(); ++i) v[i] += a.mult[j] * hom_[i][j];
    return v;
  }

  long ext(const ModuleSpec& a, const ModuleSpec& b) const {
    long e = hom(a, b) - euler_form(*q_, dim_of(a), dim_of(b));
    if (e < 0) throw InternalError("negative Ext dimension");
    return e;
  }

  // Direct sum of indecomposables, one block per summand, roots in canonical
  // order. The slot layout is deterministic; block extraction elsewhere
  // depends on it.
  Rep realize(const ModuleSpec& s) const {
    std::vector<Rep> parts;
    for (size_t k = 0; k < s.mult.size(); ++k)
      for (long c = 0; c < s.mult[k]; ++c) parts.push_back(ind_[k]);
    if (parts.empty()) return zero_rep(q_);
    return direct_sum(parts);
  }

  std::vector<int> slot_roots(const ModuleSpec& s) const {
    std::vector<int> slots;
    for (size_t k = 0; k < s.mult.size(); ++k)
      for (long c = 0; c < s.mult[k]; ++c) slots.push_back(int(k));
    return slots;
  }

  // Krull-Schmidt multiplicities of an arbitrary representation, read off the
  // hom counts [w, Y_j]: the table is unitriangular in the directedness
  // order, so the system solves by back-substitution over the integers.
  ModuleSpec decompose(const Rep& w) const {
    if (!(w.quiver == q_ || *w.quiver == *q_)) throw Error("decompose over a different quiver");
    const int r = root_count();
    std::vector<long> b(r);
    for (int j = 0; j < r; ++j) b[j] = hom_dim(w, ind_[j]);
    ModuleSpec m = zero_spec();
    for (int t = 0; t < r; ++t) {
      int j = topo_[t];
      long v = b[j];
      for (int u = 0; u < t; ++u) {
        int k = topo_[u];
        v -= m.mult[k] * hom_[k][j];
      }
      if (v < 0) throw InternalError("decompose: negative multiplicity");
      m.mult[j] = v;
    }
    if (dim_of(m) != w.dim) throw InternalError("decompose: dimension vectors disagree");
    return m;
  }

  // Basis of Hom(realize(a), realize(b)), assembled block-by-block from the
  // cached bases between indecomposables.
  std::vector<Morphism> hom_basis(const ModuleSpec& a, const ModuleSpec& b) const {
    Rep ra = realize(a), rb = realize(b);
    std::vector<int> sa = slot_roots(a), sb = slot_roots(b);
    std::vector<DimVector> offa = slot_offsets(a), offb = slot_offsets(b);
    std::vector<Morphism> basis;
    for (size_t i = 0; i < sa.size(); ++i)
      for (size_t j = 0; j < sb.size(); ++j)
        for (const Morphism& f : hom_bases_[sa[i]][sb[j]]) {
          VMaps maps = zero_vmaps(ra, rb);
          for (int v = 0; v < q_->vertex_count(); ++v)
            maps[v].set_block(int(offb[j][v]), int(offa[i][v]), f.maps[v]);
          basis.push_back(Morphism{ra, rb, std::move(maps)});
        }
    return basis;
  }

  // Per-slot vertex offsets inside realize(s).
  std::vector<DimVector> slot_offsets(const ModuleSpec& s) const {
    std::vector<int> slots = slot_roots(s);
    std::vector<DimVector> offs;
    DimVector acc(q_->vertex_count(), 0);
    for (int root_idx : slots) {
      offs.push_back(acc);
      for (int v = 0; v < q_->vertex_count(); ++v) acc[v] += roots_[root_idx][v];
    }
    return offs;
  }

 private:
  // Topological order of the relation "[Y_i, Y_j] > 0, i != j". Acyclic for
  // Dynkin quivers; a cycle would break decompose, so it is a hard error.
  std::vector<int> directedness_order() const {
    const int r = root_count();
    std::vector<int> indeg(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j && hom_[i][j] > 0) ++indeg[j];
    std::vector<bool> done(r, false);
    std::vector<int> order;
    for (int step = 0; step < r; ++step) {
      int pick = -1;
      for (int v = 0; v < r; ++v)
        if (!done[v] && indeg[v] == 0) {
          pick = v;
          break;
        }
      if (pick < 0) throw InternalError("hom relation between indecomposables has a cycle");
      done[pick] = true;
      order.push_back(pick);
      for (int j = 0; j < r; ++j)
        if (!done[j] && pick != j && hom_[pick][j] > 0) --indeg[j];
    }
    return order;
  }

  QuiverPtr q_;
  DynkinType type_;
  std::vector<DimVector> roots_;
  std::vector<Rep> ind_;
  std::vector<std::vector<long>> hom_;
  std::vector<std::vector<std::vector<Morphism>>> hom_bases_;
  std::vector<int> topo_;
  std::vector<int> topo_pos_;
};

// Radical membership: f splits off no common indecomposable summand.
// Equivalent test, using that endomorphism rings of indecomposables are
// one-dimensional: every composite  Y -> X -f-> Y' -> Y  through an
// indecomposable Y vanishes.
inline bool in_radical(const ModuleCategory& cat, const Morphism& f) {
  for (int k = 0; k < cat.root_count(); ++k) {
    const Rep& y = cat.indec(k);
    std::vector<Morphism> into = hom_space(y, f.src);
    if (into.empty()) continue;
    std::vector<Morphism> outof = hom_space(f.dst, y);
    for (const Morphism& s : into)
      for (const Morphism& r : outof)
        if (!vmaps_zero(compose(r.maps, compose(f.maps, s.maps)))) return false;
  }
  return true;
}

}  // namespace qdeg
