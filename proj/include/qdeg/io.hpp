#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qdeg/cocycle.hpp"
#include "qdeg/degeneration.hpp"

namespace qdeg {

using json = nlohmann::ordered_json;

// --- Quivers ----------------------------------------------------------------

inline json quiver_to_json(const Quiver& q) {
  json j;
  j["vertices"] = q.vertices();
  json arrows = json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(json{{"id", a.id}, {"source", a.source}, {"target", a.target}});
  j["arrows"] = std::move(arrows);
  return j;
}

inline Quiver parse_quiver(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
    throw Error("quiver document needs 'vertices' and 'arrows'");
  std::vector<int> vs;
  for (const auto& v : j.at("vertices")) vs.push_back(v.get<int>());
  std::vector<Arrow> as;
  for (const auto& a : j.at("arrows")) {
    Arrow ar;
    ar.id = a.at("id").is_string() ? a.at("id").get<std::string>()
                                   : std::to_string(a.at("id").get<long>());
    ar.source = a.at("source").get<int>();
    ar.target = a.at("target").get<int>();
    as.push_back(std::move(ar));
  }
  return Quiver(std::move(vs), std::move(as));
}

// --- Dimension vectors (objects keyed by vertex id) --------------------------

inline json dimvec_to_json(const Quiver& q, const DimVector& d) {
  json j = json::object();
  for (int i = 0; i < q.vertex_count(); ++i) j[std::to_string(q.vertex_id(i))] = d[i];
  return j;
}

inline DimVector parse_dimvec(const Quiver& q, const json& j) {
  DimVector d(q.vertex_count(), 0);
  if (!j.is_object()) throw Error("dimension vector must be an object keyed by vertex id");
  for (auto it = j.begin(); it != j.end(); ++it) {
    int vid = std::stoi(it.key());
    long val = it.value().get<long>();
    if (val < 0) throw Error("negative dimension");
    d[q.vpos(vid)] = val;
  }
  return d;
}

// --- Matrices, representations, morphisms ------------------------------------

inline json mat_to_json(const Mat& m) {
  json j = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) j.push_back(rat_str(m.at(r, c)));
  return j;
}

inline Mat parse_mat(const json& j, int rows, int cols) {
  if (!j.is_array() || int(j.size()) != rows * cols)
    throw Error("matrix entry count does not match its shape");
  Mat m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = parse_rat(j[k++].get<std::string>());
  return m;
}

inline json rep_to_json(const Rep& r) {
  const Quiver& q = *r.quiver;
  json j;
  j["dim"] = dimvec_to_json(q, r.dim);
  json mats = json::object();
  for (int k = 0; k < q.arrow_count(); ++k) mats[q.arrow(k).id] = mat_to_json(r.mats[k]);
  j["matrices"] = std::move(mats);
  return j;
}

inline Rep parse_rep(const QuiverPtr& q, const json& j) {
  Rep r;
  r.quiver = q;
  r.dim = parse_dimvec(*q, j.at("dim"));
  const json& mats = j.at("matrices");
  for (int k = 0; k < q->arrow_count(); ++k) {
    const Arrow& a = q->arrow(k);
    int rows = int(r.dim[q->vpos(a.target)]), cols = int(r.dim[q->vpos(a.source)]);
    if (!mats.contains(a.id)) {
      if (rows * cols != 0) throw Error("missing matrix for arrow " + a.id);
      r.mats.emplace_back(rows, cols);
    } else {
      r.mats.push_back(parse_mat(mats.at(a.id), rows, cols));
    }
  }
  check_rep(r);
  return r;
}

inline json vmaps_to_json(const Quiver& q, const VMaps& f) {
  json j = json::object();
  for (int i = 0; i < q.vertex_count(); ++i) j[std::to_string(q.vertex_id(i))] = mat_to_json(f[i]);
  return j;
}

inline VMaps parse_vmaps(const Quiver& q, const json& j, const DimVector& src, const DimVector& dst) {
  VMaps f;
  for (int i = 0; i < q.vertex_count(); ++i)
    f.push_back(parse_mat(j.at(std::to_string(q.vertex_id(i))), int(dst[i]), int(src[i])));
  return f;
}

inline json ses_to_json(const Ses& s) {
  const Quiver& q = *s.left.quiver;
  json j;
  j["left"] = rep_to_json(s.left);
  j["middle"] = rep_to_json(s.middle);
  j["right"] = rep_to_json(s.right);
  j["inj"] = vmaps_to_json(q, s.inj);
  j["surj"] = vmaps_to_json(q, s.surj);
  return j;
}

// Re-verifies exactness while parsing.
inline Ses parse_ses(const QuiverPtr& q, const json& j) {
  Rep l = parse_rep(q, j.at("left"));
  Rep m = parse_rep(q, j.at("middle"));
  Rep r = parse_rep(q, j.at("right"));
  VMaps inj = parse_vmaps(*q, j.at("inj"), l.dim, m.dim);
  VMaps surj = parse_vmaps(*q, j.at("surj"), m.dim, r.dim);
  return make_ses(std::move(l), std::move(m), std::move(r), std::move(inj), std::move(surj));
}

// --- Cocycles (normalized: one matrix per arrow) --------------------------------

inline json cocycle_to_json(const CocycleSpace& cs, const Mat& z) {
  const Quiver& q = *cs.v.quiver;
  std::vector<Mat> comps = cs.unflatten(z);
  json mats = json::object();
  for (int k = 0; k < q.arrow_count(); ++k) mats[q.arrow(k).id] = mat_to_json(comps[k]);
  json j;
  j["v_dim"] = dimvec_to_json(q, cs.v.dim);
  j["u_dim"] = dimvec_to_json(q, cs.u.dim);
  j["components"] = std::move(mats);
  return j;
}

inline Mat parse_cocycle(const CocycleSpace& cs, const json& j) {
  const Quiver& q = *cs.v.quiver;
  std::vector<Mat> comps;
  const json& mats = j.at("components");
  for (int k = 0; k < q.arrow_count(); ++k) {
    int rows = int(cs.u.dim[q.tgt_pos(k)]), cols = int(cs.v.dim[q.src_pos(k)]);
    if (!mats.contains(q.arrow(k).id)) {
      if (rows * cols != 0) throw Error("missing cocycle component for arrow " + q.arrow(k).id);
      comps.emplace_back(rows, cols);
    } else {
      comps.push_back(parse_mat(mats.at(q.arrow(k).id), rows, cols));
    }
  }
  return cs.flatten(comps);
}

// --- Module specs -------------------------------------------------------------

inline json spec_to_json(const ModuleSpec& s) {
  json j;
  j["mult"] = s.mult;
  return j;
}

// Accepts either a multiplicity vector over the root order or an explicit
// representation (decomposed on ingest).
inline ModuleSpec parse_spec(const ModuleCategory& cat, const json& j) {
  if (j.is_object() && j.contains("mult")) {
    std::vector<long> m;
    for (const auto& x : j.at("mult")) {
      long v = x.get<long>();
      if (v < 0) throw Error("negative multiplicity");
      m.push_back(v);
    }
    if (int(m.size()) != cat.root_count())
      throw Error("multiplicity vector length does not match the root count");
    return ModuleSpec{std::move(m)};
  }
  if (j.is_object() && j.contains("matrices")) {
    if (j.contains("quiver") && !(parse_quiver(j.at("quiver")) == cat.quiver()))
      throw Error("representation is over a different quiver");
    return cat.decompose(parse_rep(cat.quiver_ptr(), j));
  }
  throw Error("module spec needs either 'mult' or 'matrices'");
}

// --- Files and misc ------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

inline std::string spec_label(const ModuleSpec& s) {
  std::string out = "[";
  for (size_t k = 0; k < s.mult.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s.mult[k]);
  }
  return out + "]";
}

// DOT export of a degeneration poset; node order and labels are fixed, so
// the bytes are reproducible.
inline std::string poset_to_dot(const ModuleCategory& cat, const DegPoset& p) {
  std::ostringstream os;
  os << "digraph degeneration {\n";
  os << "  rankdir=TB;\n";
  for (size_t i = 0; i < p.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << spec_label(p.nodes[i])
       << " dim " << orbit_dim(cat, p.nodes[i]) << "\"];\n";
  }
  for (const auto& e : p.cover_edges)
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.codim << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qdeg
