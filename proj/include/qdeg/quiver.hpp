#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdeg/rational.hpp"

namespace qdeg {

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
  bool operator==(const Arrow&) const = default;
};

// A finite quiver: ordered vertex and arrow lists. The vertex order is part
// of the identity (dimension vectors and root lists are indexed by it).
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<int> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (size_t i = 0; i < vertices_.size(); ++i) {
      if (!vpos_.emplace(vertices_[i], int(i)).second)
        throw Error("duplicate vertex id");
    }
    std::set<std::string> ids;
    for (const auto& a : arrows_) {
      if (!ids.insert(a.id).second) throw Error("duplicate arrow id: " + a.id);
      if (!vpos_.count(a.source) || !vpos_.count(a.target))
        throw Error("arrow " + a.id + " uses an undeclared vertex");
    }
  }

  int vertex_count() const { return int(vertices_.size()); }
  int arrow_count() const { return int(arrows_.size()); }
  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int k) const { return arrows_[k]; }
  int vertex_id(int pos) const { return vertices_[pos]; }

  int vpos(int vertex_id) const {
    auto it = vpos_.find(vertex_id);
    if (it == vpos_.end()) throw Error("unknown vertex id");
    return it->second;
  }
  int src_pos(int arrow_k) const { return vpos(arrows_[arrow_k].source); }
  int tgt_pos(int arrow_k) const { return vpos(arrows_[arrow_k].target); }

  bool operator==(const Quiver& o) const {
    return vertices_ == o.vertices_ && arrows_ == o.arrows_;
  }

  // Same quiver with every arrow at `vertex_id` reversed.
  Quiver reversed_at(int vertex_id) const {
    std::vector<Arrow> arrows = arrows_;
    for (auto& a : arrows)
      if (a.source == vertex_id || a.target == vertex_id)
        std::swap(a.source, a.target);
    return Quiver(vertices_, std::move(arrows));
  }

 private:
  std::vector<int> vertices_;
  std::vector<Arrow> arrows_;
  std::map<int, int> vpos_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Dimension vector, indexed by vertex position.
using DimVector = std::vector<long>;

inline long total(const DimVector& d) {
  long s = 0;
  for (long x : d) s += x;
  return s;
}

struct DynkinType {
  char family = 'A';  // 'A', 'D' or 'E'
  int rank = 0;
  bool operator==(const DynkinType&) const = default;
  std::string str() const { return std::string(1, family) + std::to_string(rank); }
};

// Euler form of the path algebra: <x,y> = sum_i x_i y_i - sum_a x_{s(a)} y_{e(a)}.
inline long euler_form(const Quiver& q, const DimVector& x, const DimVector& y) {
  if (int(x.size()) != q.vertex_count() || int(y.size()) != q.vertex_count())
    throw Error("dimension vector does not match quiver");
  long s = 0;
  for (int i = 0; i < q.vertex_count(); ++i) s += x[i] * y[i];
  for (int k = 0; k < q.arrow_count(); ++k) s -= x[q.src_pos(k)] * y[q.tgt_pos(k)];
  return s;
}

inline long tits_form(const Quiver& q, const DimVector& d) {
  return euler_form(q, d, d);
}

// ADE recognition of the underlying graph: connected simple tree, at most one
// branch vertex, branch arms limited to the classical shapes.
inline std::optional<DynkinType> classify(const Quiver& q) {
  const int n = q.vertex_count();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<int>> adj(n);
  std::set<std::pair<int, int>> seen;
  for (int k = 0; k < q.arrow_count(); ++k) {
    int a = q.src_pos(k), b = q.tgt_pos(k);
    if (a == b) return std::nullopt;  // loop
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) return std::nullopt;  // multiple edge
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (q.arrow_count() != n - 1) return std::nullopt;  // tree or bust
  std::vector<bool> vis(n, false);
  std::vector<int> stack = {0};
  vis[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) return std::nullopt;

  std::vector<int> branch;
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() >= 4) return std::nullopt;
    if (adj[v].size() == 3) branch.push_back(v);
  }
  if (branch.empty()) return DynkinType{'A', n};
  if (branch.size() > 1) return std::nullopt;
  int c = branch[0];
  std::vector<int> arms;
  for (int w : adj[c]) {
    int len = 1, prev = c, cur = w;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] != 1) return std::nullopt;
  if (arms[1] == 1) return DynkinType{'D', n};  // (1,1,k)
  if (arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return DynkinType{'E', n};
  return std::nullopt;
}

// Simple reflection at vertex position p for the symmetrized Tits form:
// the p-th coordinate becomes (sum over incident edges of the neighbour) - d_p.
inline DimVector reflect(const Quiver& q, const DimVector& d, int p) {
  DimVector r = d;
  long nb = 0;
  for (int k = 0; k < q.arrow_count(); ++k) {
    int a = q.src_pos(k), b = q.tgt_pos(k);
    if (a == p) nb += d[b];
    if (b == p) nb += d[a];
  }
  r[p] = nb - d[p];
  return r;
}

inline bool nonnegative(const DimVector& d) {
  for (long x : d)
    if (x < 0) return false;
  return true;
}

// All positive roots (Tits form value 1), via breadth-first closure of the
// unit vectors under simple reflections. Sorted by total dimension, then
// lexicographically: this fixed order indexes every multiplicity vector.
inline std::vector<DimVector> positive_roots(const Quiver& q) {
  if (!classify(q)) throw Error("positive_roots: quiver is not Dynkin");
  const int n = q.vertex_count();
  std::set<DimVector> found;
  std::vector<DimVector> frontier;
  for (int i = 0; i < n; ++i) {
    DimVector e(n, 0);
    e[i] = 1;
    found.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<DimVector> next;
    for (const auto& d : frontier)
      for (int p = 0; p < n; ++p) {
        DimVector r = reflect(q, d, p);
        if (nonnegative(r) && total(r) > 0 && found.insert(r).second)
          next.push_back(r);
      }
    frontier = std::move(next);
  }
  std::vector<DimVector> roots(found.begin(), found.end());
  std::sort(roots.begin(), roots.end(), [](const DimVector& a, const DimVector& b) {
    long ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return roots;
}

}  // namespace qdeg
