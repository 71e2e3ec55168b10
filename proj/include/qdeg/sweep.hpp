#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "qdeg/certify.hpp"

namespace qdeg {

// Underlying trees of the supported families. A_n is the path 1-2-...-n;
// D_n forks at vertex 3: edges 1-3, 2-3, 3-4, ..., (n-1)-n.
inline std::vector<std::pair<int, int>> family_edges(const std::string& family) {
  if (family.size() < 2 || (family[0] != 'A' && family[0] != 'D' && family[0] != 'E'))
    throw Error("unknown family: " + family);
  int n = std::stoi(family.substr(1));
  std::vector<std::pair<int, int>> edges;
  if (family[0] == 'A') {
    if (n < 1) throw Error("A-family rank must be >= 1");
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
  } else if (family[0] == 'D') {
    if (n < 4) throw Error("D-family rank must be >= 4");
    edges.push_back({1, 3});
    edges.push_back({2, 3});
    for (int i = 3; i < n; ++i) edges.push_back({i, i + 1});
  } else {
    if (n < 6 || n > 8) throw Error("E-family rank must be 6, 7 or 8");
    // arm lengths (1,2,n-4) around the branch vertex 4
    edges = {{1, 2}, {2, 4}, {3, 4}, {4, 5}};
    for (int i = 5; i < n; ++i) edges.push_back({i, i + 1});
  }
  return edges;
}

// Every orientation of the family's tree, named "<family>/o<bitmask>".
inline std::vector<std::pair<std::string, Quiver>> orientations_of(const std::string& family) {
  auto edges = family_edges(family);
  int n = 0;
  for (auto [a, b] : edges) n = std::max(n, std::max(a, b));
  std::vector<int> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(i);
  std::vector<std::pair<std::string, Quiver>> out;
  for (unsigned mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<Arrow> arrows;
    for (size_t k = 0; k < edges.size(); ++k) {
      auto [a, b] = edges[k];
      if (mask & (1u << k)) std::swap(a, b);
      arrows.push_back(Arrow{"a" + std::to_string(k + 1), a, b});
    }
    out.push_back({family + "/o" + std::to_string(mask), Quiver(vertices, std::move(arrows))});
  }
  return out;
}

// Dimension vectors with 1 <= total <= max_total, lexicographic.
inline std::vector<DimVector> dim_vectors_up_to(int vertex_count, long max_total) {
  std::vector<DimVector> out;
  DimVector cur(vertex_count, 0);
  auto rec = [&](auto&& self, int i, long left) -> void {
    if (i == vertex_count) {
      if (total(cur) > 0) out.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
    cur[i] = 0;
  };
  rec(rec, 0, max_total);
  return out;
}

struct SweepConfig {
  std::vector<std::string> families = {"A2", "A3", "A4", "D4"};
  long max_total_dim = 6;
  uint64_t seed = 0;
  int budget_trials = 500;
  long budget_zmult = 3;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepStats {
  long pairs = 0, codim1 = 0, codim2 = 0;
  long inconclusive = 0, invalid_certificates = 0;
  std::map<std::string, long> final_rules;
  std::vector<std::string> failures;

  void merge(const SweepStats& o) {
    pairs += o.pairs;
    codim1 += o.codim1;
    codim2 += o.codim2;
    inconclusive += o.inconclusive;
    invalid_certificates += o.invalid_certificates;
    for (const auto& [k, v] : o.final_rules) final_rules[k] += v;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

// Runs the callback on every worker-slot index, fanning out over threads.
// Results must be written to per-index slots so the outcome is independent
// of scheduling.
template <typename Fn>
inline void parallel_for(size_t count, unsigned threads, Fn&& fn) {
  unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  hw = std::min<unsigned>(hw, count == 0 ? 1 : unsigned(count));
  if (hw <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < hw; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Certifies every degeneration pair of codimension one or two for one
// (quiver, dimension vector) unit. Certificates are validated on the spot.
inline SweepStats sweep_unit(const ModuleCategory& cat, const DimVector& d,
                             const std::string& quiver_name, const SweepConfig& cfg) {
  SweepStats st;
  std::vector<ModuleSpec> nodes = all_specs_with_dim(cat, d);
  const int n = int(nodes.size());
  std::vector<std::vector<long>> hv(n), hcv(n);
  std::vector<long> self(n);
  for (int i = 0; i < n; ++i) {
    hv[i] = cat.hom_vector(nodes[i]);
    hcv[i] = cat.hom_covector(nodes[i]);
    self[i] = cat.hom(nodes[i], nodes[i]);
  }
  ExtReductionCache cache(cat);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      long c = self[j] - self[i];
      if (c < 1 || c > 2) continue;
      bool deg = true;
      for (int k = 0; k < cat.root_count() && deg; ++k)
        if (hv[j][k] < hv[i][k] || hcv[j][k] < hcv[i][k]) deg = false;
      if (!deg) continue;
      ++st.pairs;
      (c == 1 ? st.codim1 : st.codim2)++;
      CertifyOptions opts{mix_seed(cfg.seed, uint64_t(i) * 1000003u + uint64_t(j)),
                          cfg.budget_trials, cfg.budget_zmult};
      Verdict v = certify(cat, nodes[i], nodes[j], opts, &cache);
      std::string dstr = "(";
      for (size_t k = 0; k < d.size(); ++k) dstr += (k ? "," : "") + std::to_string(d[k]);
      dstr += ")";
      std::string pair_desc = quiver_name + " d=" + dstr + " m=" + spec_label(nodes[i]) +
                              " n=" + spec_label(nodes[j]);
      if (v.kind != VerdictKind::RegCertified) {
        ++st.inconclusive;
        st.failures.push_back(pair_desc + " -> " + verdict_name(v.kind) +
                              (v.reason.empty() ? "" : " (" + v.reason + ")"));
        continue;
      }
      const json& steps = v.certificate->steps;
      st.final_rules[steps.back().at("rule").get<std::string>()]++;
      if (!validate(*v.certificate)) {
        ++st.invalid_certificates;
        st.failures.push_back(pair_desc + " -> certificate failed validation");
      }
    }
  return st;
}

struct SweepResult {
  std::string report;
  SweepStats totals;
};

inline SweepResult run_sweep(const SweepConfig& cfg) {
  struct Unit {
    std::string name;
    const ModuleCategory* cat;
    DimVector d;
  };
  std::vector<std::pair<std::string, ModuleCategory>> cats;
  for (const std::string& fam : cfg.families)
    for (auto& [name, q] : orientations_of(fam)) cats.emplace_back(name, ModuleCategory(q));

  std::vector<Unit> units;
  for (auto& [name, cat] : cats)
    for (const DimVector& d : dim_vectors_up_to(cat.quiver().vertex_count(), cfg.max_total_dim))
      units.push_back(Unit{name, &cat, d});

  std::vector<SweepStats> results(units.size());
  parallel_for(units.size(), cfg.threads, [&](size_t i) {
    results[i] = sweep_unit(*units[i].cat, units[i].d, units[i].name, cfg);
  });

  // order-normalized assembly: per-quiver lines in enumeration order
  std::ostringstream os;
  os << "degeneration sweep report\n";
  os << "families:";
  for (const auto& f : cfg.families) os << " " << f;
  os << "\nmax total dimension: " << cfg.max_total_dim << "\n";
  os << "seed: " << cfg.seed << "\n";
  os << "budget-trials: " << cfg.budget_trials << "\n";
  os << "budget-zmult: " << cfg.budget_zmult << "\n\n";

  SweepStats totals;
  size_t u = 0;
  for (auto& [name, cat] : cats) {
    SweepStats per;
    while (u < units.size() && units[u].name == name) per.merge(results[u++]);
    os << name << ": pairs=" << per.pairs << " codim1=" << per.codim1 << " codim2=" << per.codim2;
    os << " rules:";
    for (const auto& [k, v] : per.final_rules) os << " " << k << "=" << v;
    os << "\n";
    totals.merge(per);
  }
  os << "\ntotals: pairs=" << totals.pairs << " codim1=" << totals.codim1
     << " codim2=" << totals.codim2 << " inconclusive=" << totals.inconclusive
     << " invalid=" << totals.invalid_certificates << "\n";
  os << "rule totals:";
  for (const auto& [k, v] : totals.final_rules) os << " " << k << "=" << v;
  os << "\n";
  if (totals.failures.empty()) {
    os << "failures: none\n";
  } else {
    os << "failures: " << totals.failures.size() << "\n";
    for (const auto& f : totals.failures) os << "  " << f << "\n";
  }
  return SweepResult{os.str(), std::move(totals)};
}

}  // namespace qdeg
