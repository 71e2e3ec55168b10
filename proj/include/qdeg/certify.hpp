#pragma once

#include <optional>
#include <string>

#include "qdeg/ecriterion.hpp"
#include "qdeg/io.hpp"

namespace qdeg {

// Decision pipeline for regularity of an orbit-closure point in codimension
// one or two. Each applied rule leaves a step record whose every number can
// be recomputed from the stored modules; validate() below does exactly that.

enum class VerdictKind { RegCertified, SameOrbit, NotDegeneration, CodimOutOfScope, Inconclusive };

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::RegCertified: return "RegCertified";
    case VerdictKind::SameOrbit: return "SameOrbit";
    case VerdictKind::NotDegeneration: return "NotDegeneration";
    case VerdictKind::CodimOutOfScope: return "CodimOutOfScope";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct CertifyOptions {
  uint64_t seed = 0;
  int budget_trials = 500;  // random combinations per sequence search
  long budget_zmult = 3;    // multiplicity cap in witness searches
};

struct Certificate {
  Quiver quiver;
  std::vector<DimVector> roots;
  ModuleSpec m, n;
  long codim = 0;
  uint64_t seed = 0;
  int budget_trials = 500;
  long budget_zmult = 3;
  json steps = json::array();
};

struct Verdict {
  VerdictKind kind;
  long codim = 0;
  std::optional<Certificate> certificate;
  std::string reason;
};

// --- Sequence search: 0 -> U -> M -> V -> 0 ----------------------------------
//
// Requires delta'_{M,U+V}(U) = 0 and delta_{M,U+V}(V) = 0; existence is then
// guaranteed, so a bounded-search miss is reported as inconclusive, never as
// nonexistence.
inline std::optional<Ses> build_umv(const ModuleCategory& cat, const ModuleSpec& u,
                                    const ModuleSpec& m, const ModuleSpec& v, int trials,
                                    uint64_t seed) {
  ModuleSpec n = u + v;
  if (delta_prime(cat, m, n, u) != 0 || delta(cat, m, n, v) != 0)
    throw Error("build_umv: delta preconditions fail");
  Rep ur = cat.realize(u), mr = cat.realize(m);
  std::vector<Morphism> basis = cat.hom_basis(u, m);
  auto attempt = [&](const VMaps& f) -> std::optional<Ses> {
    if (!is_injective(f)) return std::nullopt;
    Cokernel co = cokernel(ur, mr, f);
    if (!(cat.decompose(co.rep) == v)) return std::nullopt;
    return make_ses(ur, mr, co.rep, f, co.proj);
  };
  for (const Morphism& b : basis)
    if (auto got = attempt(b.maps)) return got;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    VMaps cand = zero_vmaps(ur, mr);
    bool nonzero = false;
    for (const Morphism& b : basis) {
      long c = rng.range(-3, 3);
      if (c == 0) continue;
      nonzero = true;
      for (size_t i = 0; i < cand.size(); ++i) cand[i] = cand[i] + b.maps[i].scaled(Rat(c));
    }
    if (!nonzero) continue;
    if (auto got = attempt(cand)) return got;
  }
  return std::nullopt;
}

// Indecomposable summands of n with the two complementary sign patterns:
// delta(U) > 0 = delta'(U) and delta(V) = 0 < delta'(V). U minimal, V
// maximal in the directedness order; both exist for disjoint proper pairs.
inline std::pair<int, int> find_special_uv(const ModuleCategory& cat, const ModuleSpec& m,
                                           const ModuleSpec& n) {
  if (!disjoint(m, n) || m == n) throw Error("find_special_uv: needs a disjoint proper pair");
  int u = -1, v = -1;
  for (int k = 0; k < cat.root_count(); ++k) {
    if (n.mult[k] == 0) continue;
    ModuleSpec y = cat.unit_spec(k);
    long d = delta(cat, m, n, y), dp = delta_prime(cat, m, n, y);
    if (d > 0 && dp == 0 && (u < 0 || cat.topo_pos(k) < cat.topo_pos(u))) u = k;
    if (d == 0 && dp > 0 && (v < 0 || cat.topo_pos(k) > cat.topo_pos(v))) v = k;
  }
  if (u < 0 || v < 0)
    throw InternalError("no special summand pair; contradicts the structure of degenerations");
  return {u, v};
}

namespace cert_detail {

inline ModuleSpec spec_from_json(const ModuleCategory& cat, const json& j) {
  std::vector<long> m;
  for (const auto& x : j) m.push_back(x.get<long>());
  if (int(m.size()) != cat.root_count()) throw Error("multiplicity vector length mismatch");
  return ModuleSpec{std::move(m)};
}

// Codimension-one terminal rule: the four delta values are forced.
inline json step_codim1(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n,
                        const char* rule = "Codim1") {
  long dm = delta(cat, m, n, m), dpm = delta_prime(cat, m, n, m);
  long dn = delta(cat, m, n, n), dpn = delta_prime(cat, m, n, n);
  if (dm != 0 || dpm != 0 || dn != 1 || dpn != 1)
    throw InternalError("codimension-one delta pattern violated");
  json j;
  j["rule"] = rule;
  j["m"] = m.mult;
  j["n"] = n.mult;
  j["delta_m"] = dm;
  j["delta_prime_m"] = dpm;
  j["delta_n"] = dn;
  j["delta_prime_n"] = dpn;
  return j;
}

// Common-summand reduction. Returns the step and, for the cancel case, the
// reduced pair to continue with; `terminal` marks case (1).
struct Aux1Result {
  json step;
  bool terminal;
  ModuleSpec m_red, n_red;
};

inline Aux1Result rule_aux1(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n) {
  SplitCommon sc = split_common(m, n);
  if (sc.common.is_zero()) throw InternalError("rule_aux1 applied to a disjoint pair");
  long c_red = codim(cat, sc.m_red, sc.n_red);
  if (c_red != 1 && c_red != 2) throw InternalError("reduced codimension outside {1,2}");
  json j;
  j["rule"] = c_red == 1 ? "Aux1-Case1" : "Aux1-Cancel";
  j["m"] = m.mult;
  j["n"] = n.mult;
  j["common"] = sc.common.mult;
  j["m_reduced"] = sc.m_red.mult;
  j["n_reduced"] = sc.n_red.mult;
  j["reduced_codim"] = c_red;
  if (c_red == 1) {
    // the reduced pair satisfies the codimension-one pattern; record it
    json sub = step_codim1(cat, sc.m_red, sc.n_red);
    j["reduced_delta_m"] = sub["delta_m"];
    j["reduced_delta_prime_m"] = sub["delta_prime_m"];
    j["reduced_delta_n"] = sub["delta_n"];
    j["reduced_delta_prime_n"] = sub["delta_prime_n"];
    return Aux1Result{std::move(j), true, sc.m_red, sc.n_red};
  }
  long dx = delta(cat, m, n, sc.common), dpx = delta_prime(cat, m, n, sc.common);
  if (dx != 0 || dpx != 0)
    throw InternalError("cancellation requires both deltas of the common summand to vanish");
  j["delta_common"] = dx;
  j["delta_prime_common"] = dpx;
  return Aux1Result{std::move(j), false, sc.m_red, sc.n_red};
}

// Terminal rule for disjoint codimension-two pairs with at least three
// summands. The step records the U/V/L split and the delta bookkeeping that
// the underlying argument consumes.
inline json step_aux2(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n) {
  long s_n = cat.summand_count(n);
  if (s_n < 3) throw Error("rule_aux2: fewer than three summands");
  if (s_n > 4) throw InternalError("disjoint codimension-two pair with more than four summands");
  ModuleSpec u = cat.zero_spec(), v = cat.zero_spec(), l = cat.zero_spec();
  json table = json::array();
  long sum_d = 0, sum_dp = 0;
  for (int k = 0; k < cat.root_count(); ++k) {
    if (n.mult[k] == 0) continue;
    ModuleSpec y = cat.unit_spec(k);
    long d = delta(cat, m, n, y), dp = delta_prime(cat, m, n, y);
    if (d == 0 && dp == 0)
      throw InternalError("summand of n with both deltas zero in a disjoint pair");
    if (dp == 0)
      u.mult[k] = n.mult[k];
    else if (d == 0)
      v.mult[k] = n.mult[k];
    else
      l.mult[k] = n.mult[k];
    table.push_back(json{{"root", k}, {"mult", n.mult[k]}, {"delta", d}, {"delta_prime", dp}});
    sum_d += n.mult[k] * d;
    sum_dp += n.mult[k] * dp;
  }
  long dm = delta(cat, m, n, m), dpm = delta_prime(cat, m, n, m);
  if (dm + sum_dp != 2 || dpm + sum_d != 2)
    throw InternalError("aux2 delta bookkeeping fails");
  json j;
  j["rule"] = "Aux2-S3";
  j["m"] = m.mult;
  j["n"] = n.mult;
  j["s_n"] = s_n;
  j["u"] = u.mult;
  j["v"] = v.mult;
  j["l"] = l.mult;
  j["delta_table"] = std::move(table);
  j["delta_m"] = dm;
  j["delta_prime_m"] = dpm;
  j["sum_delta_summands"] = sum_d;
  j["sum_delta_prime_summands"] = sum_dp;
  return j;
}

// First hom-basis element of Hom(src_spec, Y_t) that does not factor through
// the injection of sigma; exists whenever delta_sigma(Y_t) > 0.
inline Morphism hom_not_factoring(const ModuleCategory& cat, const Ses& sigma,
                                  const ModuleSpec& src_spec, int t) {
  std::vector<Morphism> cand = cat.hom_basis(src_spec, cat.unit_spec(t));
  std::vector<Morphism> through = hom_space(sigma.middle, cat.indec(t));
  std::vector<VMaps> span;
  for (const Morphism& phi : through) span.push_back(compose(phi.maps, sigma.inj));
  Mat span_mat(0, 0);
  if (!span.empty()) {
    span_mat = Mat(flatten_vmaps(span[0]).rows(), int(span.size()));
    for (size_t j = 0; j < span.size(); ++j) span_mat.set_block(0, int(j), flatten_vmaps(span[j]));
  }
  for (const Morphism& h : cand) {
    Mat hv = flatten_vmaps(h.maps);
    if (span.empty() ? !hv.is_zero() : !span_mat.in_col_span(hv)) return h;
  }
  throw InternalError("every homomorphism factors although delta_sigma > 0");
}

struct LongPropResult {
  json step;
  long e_nn = 0;
};

// The constructive trace behind the hardest terminal rule. sigma is the
// verified sequence 0 -> U -> M -> V -> 0 with U, V the special summands and
// n = u + v disjoint from m, codimension two, and both one-sided corcriterion
// tests positive.
inline LongPropResult rule_longprop(const ModuleCategory& cat, const ModuleSpec& m,
                                    const ModuleSpec& n, int u_root, int v_root, const Ses& sigma,
                                    ExtReductionCache* cache) {
  ModuleSpec u = cat.unit_spec(u_root), v = cat.unit_spec(v_root);
  // hypotheses (forced once corcriterion skips)
  long du = delta(cat, m, n, u), dm = delta(cat, m, n, m), dv = delta(cat, m, n, v);
  long dpu = delta_prime(cat, m, n, u), dpm = delta_prime(cat, m, n, m),
       dpv = delta_prime(cat, m, n, v);
  if (du != 1 || dm != 1 || dv != 0 || dpu != 0 || dpm != 1 || dpv != 1)
    throw InternalError("longprop hypothesis table violated");

  // Step 1: the unique summand M1 with delta_sigma(M1) = 1, a homomorphism
  // h: U -> M1 not factoring through the injection, and the pushout.
  int t = -1;
  for (int k = 0; k < cat.root_count(); ++k) {
    if (m.mult[k] == 0) continue;
    if (delta(cat, m, n, cat.unit_spec(k)) == 1) {
      if (t >= 0) throw InternalError("two summands with delta 1");
      t = k;
    }
  }
  if (t < 0 || m.mult[t] != 1) throw InternalError("no multiplicity-one summand with delta 1");
  Morphism h = hom_not_factoring(cat, sigma, u, t);
  PushoutResult po = pushout(sigma, h);
  const Ses& sigma2 = po.out;    // 0 -> M1 -> X -> V -> 0
  const Ses& sigma1 = po.total;  // 0 -> U -> M1 (+) M -> X -> 0
  ModuleSpec x = cat.decompose(sigma2.middle);
  SesClasses c1{u, cat.unit_spec(t) + m, x};
  SesClasses c2{cat.unit_spec(t), x, v};
  if (splits(c2)) throw InternalError("pushout sequence splits although h does not factor");
  if (splits(c1)) throw InternalError("total pushout sequence splits");

  // Step 2: the six split values of the deltas across the factorization.
  long s1_u = delta_sigma(cat, c1, u), s1_m = delta_sigma(cat, c1, m);
  long s1p_u = delta_prime_sigma(cat, c1, u);
  long s2_v = delta_sigma(cat, c2, v), s2p_u = delta_prime_sigma(cat, c2, u);
  long s2p_v = delta_prime_sigma(cat, c2, v);
  if (s1_u != 1 || s1_m != 0 || s1p_u != 0 || s2_v != 0 || s2p_u != 0 || s2p_v != 1)
    throw InternalError("longprop step 2 equalities fail");
  // Steps 3-5.
  long s1_x = delta_sigma(cat, c1, x);
  long s2p_m = delta_prime_sigma(cat, c2, m);
  long d_x = delta(cat, m, n, x);
  if (s1_x != 0) throw InternalError("longprop step 3 fails");
  if (s2p_m != 0) throw InternalError("longprop step 4 fails");
  if (d_x != 0) throw InternalError("longprop step 5 fails");

  // Step 6: glue sigma and sigma2 into 0 -> U -> X (+) M' -> V (+) V -> 0.
  ModuleSpec m_rest = m - cat.unit_spec(t);
  std::vector<int> slots = cat.slot_roots(m);
  auto offs = cat.slot_offsets(m);
  int slot = -1;
  for (size_t i = 0; i < slots.size(); ++i)
    if (slots[i] == t) slot = int(i);
  const Quiver& q = cat.quiver();
  const int nv = q.vertex_count();
  Rep mrest_r = cat.realize(m_rest);
  VMaps f1, f2, g1, g2;
  for (int i = 0; i < nv; ++i) {
    int lo = int(offs[slot][i]), len = int(cat.root(t)[i]);
    int hi = lo + len, total_d = int(sigma.middle.dim[i]);
    const Mat& fi = sigma.inj[i];
    f1.push_back(fi.block(lo, 0, len, fi.cols()));
    f2.push_back(Mat::vcat(fi.block(0, 0, lo, fi.cols()),
                           fi.block(hi, 0, total_d - hi, fi.cols())));
    const Mat& gi = sigma.surj[i];
    g1.push_back(gi.block(0, lo, gi.rows(), len));
    g2.push_back(Mat::hcat(gi.block(0, 0, gi.rows(), lo),
                           gi.block(0, hi, gi.rows(), total_d - hi)));
  }
  // g1 factors through the pushout injection f' (every M1 -> V does).
  std::vector<Morphism> xv = hom_space(sigma2.middle, sigma.right);
  std::vector<VMaps> via, raw;
  for (const Morphism& b : xv) {
    via.push_back(compose(b.maps, sigma2.inj));
    raw.push_back(b.maps);
  }
  auto jc = solve_combination(via, g1);
  if (!jc) throw InternalError("g1 does not factor through the pushout injection");
  VMaps jmap = combine(raw, *jc, zero_vmaps(sigma2.middle, sigma.right));

  Rep mid3 = direct_sum({sigma2.middle, mrest_r});
  Rep right3 = direct_sum({sigma.right, sigma.right});
  VMaps inj3, surj3;
  for (int i = 0; i < nv; ++i) {
    inj3.push_back(Mat::vcat(sigma2.inj[i] * f1[i], f2[i]));
    Mat top = Mat::hcat(sigma2.surj[i], Mat(int(sigma.right.dim[i]), int(mrest_r.dim[i])));
    Mat bot = Mat::hcat(jmap[i], g2[i]);
    surj3.push_back(Mat::vcat(top, bot));
  }
  Ses sigma3 = make_ses(cat.realize(u), mid3, right3, inj3, surj3);
  SesClasses c3{u, x + m_rest, v + v};
  long s3p_v = delta_prime_sigma(cat, c3, v);
  if (s3p_v != 2) throw InternalError("longprop step 6 bookkeeping fails");

  // Steps 7 and 8: the E-space bounds, closed by the generic criterion.
  CalE e_vu = cal_e(cat, m, n, v, u, cache);
  if (e_vu.dim > 2) throw InternalError("longprop step 7 bound fails");
  CalE e_nn = cal_e(cat, m, n, n, n, cache);
  if (e_nn.dim > 2) throw InternalError("longprop step 8 bound fails");

  json j;
  j["rule"] = "LongProp";
  j["m"] = m.mult;
  j["n"] = n.mult;
  j["hypotheses"] = json{{"delta_u", du},        {"delta_m", dm},
                         {"delta_v", dv},        {"delta_prime_u", dpu},
                         {"delta_prime_m", dpm}, {"delta_prime_v", dpv}};
  j["m1_root"] = t;
  j["h"] = vmaps_to_json(q, h.maps);
  j["sigma1"] = ses_to_json(sigma1);
  j["sigma2"] = ses_to_json(sigma2);
  j["x_decomp"] = x.mult;
  j["step2"] = json{{"delta_s1_u", s1_u},       {"delta_s1_m", s1_m},
                    {"delta_prime_s1_u", s1p_u}, {"delta_s2_v", s2_v},
                    {"delta_prime_s2_u", s2p_u}, {"delta_prime_s2_v", s2p_v}};
  j["step3_delta_s1_x"] = s1_x;
  j["step4_delta_prime_s2_m"] = s2p_m;
  j["step5_delta_x"] = d_x;
  j["sigma3"] = ses_to_json(sigma3);
  j["j_map"] = vmaps_to_json(q, jmap);
  j["delta_prime_sigma3_v"] = s3p_v;
  j["step7_e_vu"] = e_vu.dim;
  j["step8_e_nn"] = e_nn.dim;
  return LongPropResult{std::move(j), e_nn.dim};
}

}  // namespace cert_detail

// --- The pipeline -------------------------------------------------------------

inline Verdict certify(const ModuleCategory& cat, const ModuleSpec& m, const ModuleSpec& n,
                       const CertifyOptions& opts = {}, ExtReductionCache* cache = nullptr) {
  using namespace cert_detail;
  if (m == n) return Verdict{VerdictKind::SameOrbit, 0, std::nullopt, ""};
  if (!is_degeneration(cat, m, n)) return Verdict{VerdictKind::NotDegeneration, 0, std::nullopt, ""};
  long c = codim(cat, m, n);
  if (c >= 3) return Verdict{VerdictKind::CodimOutOfScope, c, std::nullopt, ""};

  Certificate cert{cat.quiver(), cat.roots(), m,    n, c, opts.seed, opts.budget_trials,
                   opts.budget_zmult};
  ModuleSpec cm = m, cn = n;

  if (c == 1) {
    cert.steps.push_back(step_codim1(cat, cm, cn));
    return Verdict{VerdictKind::RegCertified, c, std::move(cert), ""};
  }

  if (!split_common(cm, cn).common.is_zero()) {
    Aux1Result a = rule_aux1(cat, cm, cn);
    cert.steps.push_back(std::move(a.step));
    if (a.terminal) return Verdict{VerdictKind::RegCertified, c, std::move(cert), ""};
    cm = a.m_red;
    cn = a.n_red;
    if (!disjoint(cm, cn)) throw InternalError("pair still shares a summand after cancellation");
  }

  if (cat.summand_count(cn) >= 3) {
    cert.steps.push_back(step_aux2(cat, cm, cn));
    return Verdict{VerdictKind::RegCertified, c, std::move(cert), ""};
  }
  if (cat.summand_count(cn) < 2)
    throw InternalError("disjoint proper degeneration with an indecomposable target");

  auto [u_root, v_root] = find_special_uv(cat, cm, cn);
  {
    ModuleSpec y = cat.unit_spec(u_root), z = cat.unit_spec(v_root);
    json j;
    j["rule"] = "SpecialUV";
    j["m"] = cm.mult;
    j["n"] = cn.mult;
    j["u_root"] = u_root;
    j["v_root"] = v_root;
    j["delta_u"] = delta(cat, cm, cn, y);
    j["delta_prime_u"] = delta_prime(cat, cm, cn, y);
    j["delta_v"] = delta(cat, cm, cn, z);
    j["delta_prime_v"] = delta_prime(cat, cm, cn, z);
    cert.steps.push_back(std::move(j));
  }
  if (!(cat.unit_spec(u_root) + cat.unit_spec(v_root) == cn))
    throw InternalError("special summands do not exhaust a two-summand target");

  auto sigma = build_umv(cat, cat.unit_spec(u_root), cm, cat.unit_spec(v_root),
                         opts.budget_trials, mix_seed(opts.seed, 0x55f1u));
  if (!sigma)
    return Verdict{VerdictKind::Inconclusive, c, std::nullopt,
                   "sequence search budget exhausted in build_umv"};
  {
    json j;
    j["rule"] = "FromUtoV";
    j["u_root"] = u_root;
    j["v_root"] = v_root;
    j["sequence"] = ses_to_json(*sigma);
    j["middle_decomp"] = cm.mult;
    j["right_decomp"] = cat.unit_spec(v_root).mult;
    cert.steps.push_back(std::move(j));
  }

  long d1 = delta_prime(cat, cm, cn, cat.unit_spec(u_root) + cm);
  long d2 = delta(cat, cm, cn, cm + cat.unit_spec(v_root));
  if (d1 == 0 || d2 == 0) {
    json j;
    j["rule"] = "CorCriterion";
    j["delta_prime_sigma_u_plus_m"] = d1;
    j["delta_sigma_m_plus_v"] = d2;
    cert.steps.push_back(std::move(j));
    return Verdict{VerdictKind::RegCertified, c, std::move(cert), ""};
  }

  cert_detail::LongPropResult lp =
      cert_detail::rule_longprop(cat, cm, cn, u_root, v_root, *sigma, cache);
  cert.steps.push_back(std::move(lp.step));
  GenCriterionResult g{lp.e_nn, codim(cat, cm, cn), lp.e_nn == codim(cat, cm, cn)};
  if (g.e_dim < g.codim) throw InternalError("E-dimension below codimension");
  if (!g.regular_certified) throw InternalError("longprop did not close the criterion");
  {
    json j;
    j["rule"] = "GenCriterion";
    j["e_dim"] = g.e_dim;
    j["codim"] = g.codim;
    j["regular_certified"] = g.regular_certified;
    cert.steps.push_back(std::move(j));
  }
  return Verdict{VerdictKind::RegCertified, c, std::move(cert), ""};
}

// --- Serialization --------------------------------------------------------------

inline json certificate_to_json(const Certificate& c) {
  json j;
  j["format"] = "qdeg-certificate/1";
  j["quiver"] = quiver_to_json(c.quiver);
  json roots = json::array();
  for (const auto& r : c.roots) roots.push_back(r);
  j["roots"] = std::move(roots);
  j["m"] = c.m.mult;
  j["n"] = c.n.mult;
  j["codim"] = c.codim;
  j["seed"] = c.seed;
  j["budget_trials"] = c.budget_trials;
  j["budget_zmult"] = c.budget_zmult;
  j["steps"] = c.steps;
  return j;
}

inline Certificate parse_certificate(const json& j) {
  if (!j.is_object() || j.value("format", "") != std::string("qdeg-certificate/1"))
    throw Error("not a certificate document");
  Certificate c;
  c.quiver = parse_quiver(j.at("quiver"));
  for (const auto& r : j.at("roots")) {
    DimVector d;
    for (const auto& x : r) d.push_back(x.get<long>());
    c.roots.push_back(std::move(d));
  }
  c.m = ModuleSpec{j.at("m").get<std::vector<long>>()};
  c.n = ModuleSpec{j.at("n").get<std::vector<long>>()};
  c.codim = j.at("codim").get<long>();
  c.seed = j.at("seed").get<uint64_t>();
  c.budget_trials = j.at("budget_trials").get<int>();
  c.budget_zmult = j.at("budget_zmult").get<long>();
  c.steps = j.at("steps");
  return c;
}

// --- Validation -------------------------------------------------------------
//
// Recomputes every claim in a certificate from scratch: deltas from the hom
// table, exactness of every stored sequence, decompositions, factorization
// facts and the E-dimensions. Any mismatch, malformed chain or wrong final
// rule makes it false.

namespace cert_detail {

inline bool check_eq(long a, long b) { return a == b; }

inline ModuleSpec js(const ModuleCategory& cat, const json& j) { return spec_from_json(cat, j); }

}  // namespace cert_detail

inline bool validate(const Certificate& cert) {
  using namespace cert_detail;
  try {
    ModuleCategory cat(cert.quiver);
    if (cat.roots() != cert.roots) return false;
    ModuleSpec cm = cert.m, cn = cert.n;
    if (cm == cn || !is_degeneration(cat, cm, cn)) return false;
    if (codim(cat, cm, cn) != cert.codim) return false;
    if (cert.codim < 1 || cert.codim > 2) return false;

    enum Phase { Start, Disjoint, AfterUV, AfterSeq, AfterLongProp, Done };
    Phase phase = Start;
    int u_root = -1, v_root = -1;
    std::optional<Ses> sigma;

    for (const json& step : cert.steps) {
      if (phase == Done) return false;
      std::string rule = step.at("rule").get<std::string>();

      if (rule == "Codim1") {
        if (phase != Start || cert.codim != 1) return false;
        if (!(js(cat, step.at("m")) == cm) || !(js(cat, step.at("n")) == cn)) return false;
        if (!check_eq(step.at("delta_m").get<long>(), delta(cat, cm, cn, cm)) ||
            !check_eq(step.at("delta_prime_m").get<long>(), delta_prime(cat, cm, cn, cm)) ||
            !check_eq(step.at("delta_n").get<long>(), delta(cat, cm, cn, cn)) ||
            !check_eq(step.at("delta_prime_n").get<long>(), delta_prime(cat, cm, cn, cn)))
          return false;
        if (step.at("delta_m").get<long>() != 0 || step.at("delta_prime_m").get<long>() != 0 ||
            step.at("delta_n").get<long>() != 1 || step.at("delta_prime_n").get<long>() != 1)
          return false;
        phase = Done;
        continue;
      }

      if (rule == "Aux1-Case1" || rule == "Aux1-Cancel") {
        if (phase != Start || cert.codim != 2) return false;
        SplitCommon sc = split_common(cm, cn);
        if (sc.common.is_zero()) return false;
        if (!(js(cat, step.at("m")) == cm) || !(js(cat, step.at("n")) == cn)) return false;
        if (!(js(cat, step.at("common")) == sc.common)) return false;
        if (!(js(cat, step.at("m_reduced")) == sc.m_red)) return false;
        if (!(js(cat, step.at("n_reduced")) == sc.n_red)) return false;
        long c_red = codim(cat, sc.m_red, sc.n_red);
        if (step.at("reduced_codim").get<long>() != c_red) return false;
        if (rule == "Aux1-Case1") {
          if (c_red != 1) return false;
          if (step.at("reduced_delta_m").get<long>() != delta(cat, sc.m_red, sc.n_red, sc.m_red) ||
              step.at("reduced_delta_m").get<long>() != 0)
            return false;
          if (step.at("reduced_delta_n").get<long>() != delta(cat, sc.m_red, sc.n_red, sc.n_red) ||
              step.at("reduced_delta_n").get<long>() != 1)
            return false;
          if (step.at("reduced_delta_prime_m").get<long>() !=
                  delta_prime(cat, sc.m_red, sc.n_red, sc.m_red) ||
              step.at("reduced_delta_prime_m").get<long>() != 0)
            return false;
          if (step.at("reduced_delta_prime_n").get<long>() !=
                  delta_prime(cat, sc.m_red, sc.n_red, sc.n_red) ||
              step.at("reduced_delta_prime_n").get<long>() != 1)
            return false;
          phase = Done;
        } else {
          if (c_red != 2) return false;
          if (step.at("delta_common").get<long>() != delta(cat, cm, cn, sc.common) ||
              step.at("delta_common").get<long>() != 0)
            return false;
          if (step.at("delta_prime_common").get<long>() != delta_prime(cat, cm, cn, sc.common) ||
              step.at("delta_prime_common").get<long>() != 0)
            return false;
          cm = sc.m_red;
          cn = sc.n_red;
          if (!disjoint(cm, cn)) return false;
          phase = Disjoint;
        }
        continue;
      }

      if (rule == "Aux2-S3") {
        if (phase != Start && phase != Disjoint) return false;
        if (cert.codim != 2 || !disjoint(cm, cn)) return false;
        if (!(js(cat, step.at("m")) == cm) || !(js(cat, step.at("n")) == cn)) return false;
        long s_n = cat.summand_count(cn);
        if (s_n < 3 || s_n > 4 || step.at("s_n").get<long>() != s_n) return false;
        json expect = step_aux2(cat, cm, cn);
        if (expect != step) return false;
        phase = Done;
        continue;
      }

      if (rule == "SpecialUV") {
        if (phase != Start && phase != Disjoint) return false;
        if (!disjoint(cm, cn) || cat.summand_count(cn) != 2) return false;
        if (!(js(cat, step.at("m")) == cm) || !(js(cat, step.at("n")) == cn)) return false;
        u_root = step.at("u_root").get<int>();
        v_root = step.at("v_root").get<int>();
        if (u_root < 0 || u_root >= cat.root_count() || v_root < 0 || v_root >= cat.root_count())
          return false;
        if (cn.mult[u_root] < 1 || cn.mult[v_root] < 1) return false;
        if (!(cat.unit_spec(u_root) + cat.unit_spec(v_root) == cn)) return false;
        ModuleSpec y = cat.unit_spec(u_root), z = cat.unit_spec(v_root);
        long du = delta(cat, cm, cn, y), dpu = delta_prime(cat, cm, cn, y);
        long dv = delta(cat, cm, cn, z), dpv = delta_prime(cat, cm, cn, z);
        if (step.at("delta_u").get<long>() != du || step.at("delta_prime_u").get<long>() != dpu ||
            step.at("delta_v").get<long>() != dv || step.at("delta_prime_v").get<long>() != dpv)
          return false;
        if (!(du > 0 && dpu == 0 && dv == 0 && dpv > 0)) return false;
        phase = AfterUV;
        continue;
      }

      if (rule == "FromUtoV") {
        if (phase != AfterUV) return false;
        if (step.at("u_root").get<int>() != u_root || step.at("v_root").get<int>() != v_root)
          return false;
        sigma = parse_ses(cat.quiver_ptr(), step.at("sequence"));  // re-verifies exactness
        if (!(cat.decompose(sigma->left) == cat.unit_spec(u_root))) return false;
        ModuleSpec mid = cat.decompose(sigma->middle);
        ModuleSpec rgt = cat.decompose(sigma->right);
        if (!(mid == cm) || !(rgt == cat.unit_spec(v_root))) return false;
        if (!(js(cat, step.at("middle_decomp")) == mid)) return false;
        if (!(js(cat, step.at("right_decomp")) == rgt)) return false;
        phase = AfterSeq;
        continue;
      }

      if (rule == "CorCriterion") {
        if (phase != AfterSeq) return false;
        long d1 = delta_prime(cat, cm, cn, cat.unit_spec(u_root) + cm);
        long d2 = delta(cat, cm, cn, cm + cat.unit_spec(v_root));
        if (step.at("delta_prime_sigma_u_plus_m").get<long>() != d1 ||
            step.at("delta_sigma_m_plus_v").get<long>() != d2)
          return false;
        if (d1 != 0 && d2 != 0) return false;
        phase = Done;
        continue;
      }

      if (rule == "LongProp") {
        if (phase != AfterSeq || !sigma) return false;
        if (!(js(cat, step.at("m")) == cm) || !(js(cat, step.at("n")) == cn)) return false;
        ModuleSpec u = cat.unit_spec(u_root), v = cat.unit_spec(v_root);
        const json& hy = step.at("hypotheses");
        if (hy.at("delta_u").get<long>() != delta(cat, cm, cn, u) ||
            hy.at("delta_m").get<long>() != delta(cat, cm, cn, cm) ||
            hy.at("delta_v").get<long>() != delta(cat, cm, cn, v) ||
            hy.at("delta_prime_u").get<long>() != delta_prime(cat, cm, cn, u) ||
            hy.at("delta_prime_m").get<long>() != delta_prime(cat, cm, cn, cm) ||
            hy.at("delta_prime_v").get<long>() != delta_prime(cat, cm, cn, v))
          return false;
        if (hy.at("delta_u") != 1 || hy.at("delta_m") != 1 || hy.at("delta_v") != 0 ||
            hy.at("delta_prime_u") != 0 || hy.at("delta_prime_m") != 1 ||
            hy.at("delta_prime_v") != 1)
          return false;
        int t = step.at("m1_root").get<int>();
        if (t < 0 || t >= cat.root_count() || cm.mult[t] != 1) return false;
        if (delta(cat, cm, cn, cat.unit_spec(t)) != 1) return false;
        // h must be a morphism U -> M1 that does not factor through inj.
        VMaps hmaps = parse_vmaps(cat.quiver(), step.at("h"), cat.realize(u).dim,
                                  cat.indec(t).dim);
        Morphism h = make_morphism(cat.realize(u), cat.indec(t), hmaps);
        {
          std::vector<Morphism> through = hom_space(sigma->middle, cat.indec(t));
          std::vector<VMaps> span;
          for (const Morphism& phi : through) span.push_back(compose(phi.maps, sigma->inj));
          if (auto c = solve_combination(span, h.maps); c) return false;  // factors: invalid
        }
        Ses sigma1 = parse_ses(cat.quiver_ptr(), step.at("sigma1"));
        Ses sigma2 = parse_ses(cat.quiver_ptr(), step.at("sigma2"));
        ModuleSpec x = js(cat, step.at("x_decomp"));
        if (!(cat.decompose(sigma2.middle) == x)) return false;
        SesClasses c1 = classes_of(cat, sigma1);
        SesClasses c2 = classes_of(cat, sigma2);
        if (!(c1.left == u) || !(c1.middle == cat.unit_spec(t) + cm) || !(c1.right == x))
          return false;
        if (!(c2.left == cat.unit_spec(t)) || !(c2.middle == x) || !(c2.right == v)) return false;
        if (splits(c1) || splits(c2)) return false;
        const json& s2 = step.at("step2");
        if (s2.at("delta_s1_u").get<long>() != delta_sigma(cat, c1, u) ||
            s2.at("delta_s1_m").get<long>() != delta_sigma(cat, c1, cm) ||
            s2.at("delta_prime_s1_u").get<long>() != delta_prime_sigma(cat, c1, u) ||
            s2.at("delta_s2_v").get<long>() != delta_sigma(cat, c2, v) ||
            s2.at("delta_prime_s2_u").get<long>() != delta_prime_sigma(cat, c2, u) ||
            s2.at("delta_prime_s2_v").get<long>() != delta_prime_sigma(cat, c2, v))
          return false;
        if (s2.at("delta_s1_u") != 1 || s2.at("delta_s1_m") != 0 ||
            s2.at("delta_prime_s1_u") != 0 || s2.at("delta_s2_v") != 0 ||
            s2.at("delta_prime_s2_u") != 0 || s2.at("delta_prime_s2_v") != 1)
          return false;
        if (step.at("step3_delta_s1_x").get<long>() != delta_sigma(cat, c1, x) ||
            step.at("step3_delta_s1_x") != 0)
          return false;
        if (step.at("step4_delta_prime_s2_m").get<long>() != delta_prime_sigma(cat, c2, cm) ||
            step.at("step4_delta_prime_s2_m") != 0)
          return false;
        if (step.at("step5_delta_x").get<long>() != delta(cat, cm, cn, x) ||
            step.at("step5_delta_x") != 0)
          return false;
        Ses sigma3 = parse_ses(cat.quiver_ptr(), step.at("sigma3"));
        SesClasses c3 = classes_of(cat, sigma3);
        if (!(c3.left == u) || !(c3.middle == x + (cm - cat.unit_spec(t))) ||
            !(c3.right == v + v))
          return false;
        if (step.at("delta_prime_sigma3_v").get<long>() != delta_prime_sigma(cat, c3, v) ||
            step.at("delta_prime_sigma3_v") != 2)
          return false;
        CalE e_vu = cal_e(cat, cm, cn, v, u);
        if (step.at("step7_e_vu").get<long>() != e_vu.dim || e_vu.dim > 2) return false;
        CalE e_nn = cal_e(cat, cm, cn, cn, cn);
        if (step.at("step8_e_nn").get<long>() != e_nn.dim || e_nn.dim > 2) return false;
        phase = AfterLongProp;  // GenCriterion must follow
        continue;
      }

      if (rule == "GenCriterion") {
        if (phase != AfterLongProp) return false;
        GenCriterionResult g = gen_criterion(cat, cm, cn);
        if (step.at("e_dim").get<long>() != g.e_dim || step.at("codim").get<long>() != g.codim)
          return false;
        if (!step.at("regular_certified").get<bool>() || !g.regular_certified) return false;
        phase = Done;
        continue;
      }

      return false;  // unknown rule
    }
    return phase == Done;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace qdeg
