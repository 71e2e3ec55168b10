// Command-line front end: exact degeneration-order and orbit-closure
// regularity computations for Dynkin quiver representations.
//
// Exit codes: 0 success (including SameOrbit), 2 input error or not Dynkin,
// 3 not a degeneration / invalid certificate, 4 codimension out of scope,
// 5 inconclusive search.

#include <CLI11.hpp>

#include <iostream>

#include "qdeg/certify.hpp"
#include "qdeg/io.hpp"
#include "qdeg/sweep.hpp"

using namespace qdeg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitNegative = 3;
constexpr int kExitOutOfScope = 4;
constexpr int kExitInconclusive = 5;

ModuleCategory load_category(const std::string& quiver_path) {
  Quiver q = parse_quiver(load_json_file(quiver_path));
  if (!classify(q)) throw Error("quiver is not Dynkin");
  return ModuleCategory(q);
}

DimVector parse_dim_flag(const Quiver& q, const std::string& csv) {
  DimVector d;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (cur.empty()) throw Error("malformed dimension vector");
      d.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (int(d.size()) != q.vertex_count()) throw Error("dimension vector length mismatch");
  if (!nonnegative(d)) throw Error("negative dimension");
  return d;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

int cmd_roots(const std::string& quiver_path) {
  ModuleCategory cat = load_category(quiver_path);
  std::cout << "type " << cat.type().str() << ", " << cat.root_count() << " positive roots\n";
  for (int k = 0; k < cat.root_count(); ++k) {
    std::cout << k << ":";
    for (long x : cat.root(k)) std::cout << " " << x;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_hom(const std::string& quiver_path, const std::string& m_path, const std::string& n_path) {
  ModuleCategory cat = load_category(quiver_path);
  ModuleSpec m = parse_spec(cat, load_json_file(m_path));
  ModuleSpec n = parse_spec(cat, load_json_file(n_path));
  std::cout << "[m,n] = " << cat.hom(m, n) << ", [n,m] = " << cat.hom(n, m) << "\n";
  std::cout << "[m,m] = " << cat.hom(m, m) << ", [n,n] = " << cat.hom(n, n) << "\n";
  std::cout << "ext(m,n) = " << cat.ext(m, n) << ", ext(n,m) = " << cat.ext(n, m) << "\n";
  std::cout << "disjoint: " << (disjoint(m, n) ? "yes" : "no") << "\n";
  if (cat.dim_of(m) == cat.dim_of(n) && is_degeneration(cat, m, n)) {
    std::cout << "degeneration m -> n, codim " << codim(cat, m, n) << "\n";
    std::cout << "delta table (root: delta, delta'):\n";
    for (int k = 0; k < cat.root_count(); ++k) {
      ModuleSpec y = cat.unit_spec(k);
      std::cout << "  " << k << ": " << delta(cat, m, n, y) << ", " << delta_prime(cat, m, n, y)
                << "\n";
    }
  } else {
    std::cout << "not a degeneration (m -> n)\n";
  }
  return kExitOk;
}

int cmd_decompose(const std::string& quiver_path, const std::string& rep_path) {
  ModuleCategory cat = load_category(quiver_path);
  json j = load_json_file(rep_path);
  if (j.contains("quiver") && !(parse_quiver(j.at("quiver")) == cat.quiver()))
    throw Error("representation is over a different quiver");
  Rep r = parse_rep(cat.quiver_ptr(), j);
  ModuleSpec m = cat.decompose(r);
  std::cout << spec_to_json(m).dump() << "\n";
  return kExitOk;
}

int cmd_poset(const std::string& quiver_path, const std::string& dim_csv,
              const std::string& format, const std::string& out_path) {
  ModuleCategory cat = load_category(quiver_path);
  DimVector d = parse_dim_flag(cat.quiver(), dim_csv);
  DegPoset p = deg_poset(cat, d);
  std::map<long, long> codim_hist;
  for (const auto& e : p.cover_edges) codim_hist[e.codim]++;
  std::ostringstream sum;
  sum << "orbits: " << p.nodes.size() << "\n";
  sum << "cover edges: " << p.cover_edges.size() << "\n";
  sum << "cover codim histogram:";
  for (auto [c, cnt] : codim_hist) sum << " " << c << ":" << cnt;
  sum << "\n";
  if (format == "graph") {
    emit(out_path, poset_to_dot(cat, p));
    if (!out_path.empty()) std::cout << sum.str();
  } else {
    std::ostringstream os;
    os << sum.str();
    for (size_t i = 0; i < p.nodes.size(); ++i)
      os << "n" << i << " " << spec_label(p.nodes[i]) << " orbit_dim "
         << orbit_dim(cat, p.nodes[i]) << "\n";
    for (const auto& e : p.cover_edges)
      os << "n" << e.from << " > n" << e.to << " codim " << e.codim << "\n";
    emit(out_path, os.str());
  }
  return kExitOk;
}

int cmd_ext(const std::string& quiver_path, const std::string& v_path, const std::string& u_path,
            const std::string& out_path) {
  ModuleCategory cat = load_category(quiver_path);
  ModuleSpec v = parse_spec(cat, load_json_file(v_path));
  ModuleSpec u = parse_spec(cat, load_json_file(u_path));
  ExtQuotient eq = ext_quotient(cat.realize(v), cat.realize(u));
  std::cout << "cocycle space dim: " << eq.space.dim << "\n";
  std::cout << "coboundary dim: " << eq.cob.cols() << "\n";
  std::cout << "ext dim: " << eq.ext_dim << "\n";
  if (!out_path.empty()) {
    json j;
    j["v"] = v.mult;
    j["u"] = u.mult;
    j["cocycle_dim"] = eq.space.dim;
    j["coboundary_dim"] = eq.cob.cols();
    j["ext_dim"] = eq.ext_dim;
    json reps = json::array();
    for (const Mat& z : eq.reps) reps.push_back(cocycle_to_json(eq.space, z));
    j["representatives"] = std::move(reps);
    write_file(out_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_edim(const std::string& quiver_path, const std::string& m_path, const std::string& n_path,
             const std::string& v_path, const std::string& u_path) {
  ModuleCategory cat = load_category(quiver_path);
  ModuleSpec m = parse_spec(cat, load_json_file(m_path));
  ModuleSpec n = parse_spec(cat, load_json_file(n_path));
  if (!is_degeneration(cat, m, n)) {
    std::cerr << "not a degeneration\n";
    return kExitNegative;
  }
  ModuleSpec v = v_path.empty() ? n : parse_spec(cat, load_json_file(v_path));
  ModuleSpec u = u_path.empty() ? n : parse_spec(cat, load_json_file(u_path));
  CalE e = cal_e(cat, m, n, v, u);
  std::cout << "E dim: " << e.dim << " (inside ext dim " << e.ext.ext_dim << ")\n";
  if (v == n && u == n) {
    GenCriterionResult g = gen_criterion(cat, m, n);
    std::cout << "codim: " << g.codim << "\n";
    std::cout << "regular_certified: " << (g.regular_certified ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int cmd_witness(const std::string& quiver_path, const std::string& m_path,
                const std::string& n_path, uint64_t seed, int trials, long zmult,
                const std::string& out_path) {
  ModuleCategory cat = load_category(quiver_path);
  ModuleSpec m = parse_spec(cat, load_json_file(m_path));
  ModuleSpec n = parse_spec(cat, load_json_file(n_path));
  if (m == n || !is_degeneration(cat, m, n)) {
    std::cerr << "not a proper degeneration\n";
    return kExitNegative;
  }
  WitnessBudget budget{zmult, trials};
  auto w = find_zwitness(cat, m, n, budget, seed);
  if (!w) {
    std::cerr << "no witness found within budget (inconclusive)\n";
    return kExitInconclusive;
  }
  json j;
  j["z"] = w->z.mult;
  j["f"] = vmaps_to_json(cat.quiver(), w->f.maps);
  j["z_plus_m_dim"] = dimvec_to_json(cat.quiver(), w->f.dst.dim);
  j["cokernel"] = rep_to_json(w->coker);
  j["cokernel_decomp"] = w->coker_decomp.mult;
  j["seed"] = seed;
  j["budget_trials"] = trials;
  j["budget_zmult"] = zmult;
  emit(out_path, j.dump(2) + "\n");
  if (!out_path.empty()) std::cout << "witness found: z = " << spec_label(w->z) << "\n";
  return kExitOk;
}

int cmd_certify(const std::string& quiver_path, const std::string& m_path,
                const std::string& n_path, uint64_t seed, int trials, long zmult,
                const std::string& out_path) {
  ModuleCategory cat = load_category(quiver_path);
  ModuleSpec m = parse_spec(cat, load_json_file(m_path));
  ModuleSpec n = parse_spec(cat, load_json_file(n_path));
  CertifyOptions opts{seed, trials, zmult};
  Verdict v = certify(cat, m, n, opts);
  std::cout << "verdict: " << verdict_name(v.kind);
  if (v.kind == VerdictKind::CodimOutOfScope) std::cout << "(" << v.codim << ")";
  std::cout << "\n";
  switch (v.kind) {
    case VerdictKind::SameOrbit:
      return kExitOk;
    case VerdictKind::NotDegeneration:
      return kExitNegative;
    case VerdictKind::CodimOutOfScope:
      return kExitOutOfScope;
    case VerdictKind::Inconclusive:
      std::cerr << v.reason << "\n";
      return kExitInconclusive;
    case VerdictKind::RegCertified:
      break;
  }
  if (!validate(*v.certificate)) throw InternalError("emitted certificate failed validation");
  std::cout << "codim: " << v.codim << "\n";
  std::cout << "rules:";
  for (const auto& st : v.certificate->steps) std::cout << " " << st.at("rule").get<std::string>();
  std::cout << "\n";
  std::string payload = certificate_to_json(*v.certificate).dump(2) + "\n";
  if (out_path.empty())
    std::cout << payload;
  else
    write_file(out_path, payload);
  return kExitOk;
}

int cmd_validate(const std::string& cert_path) {
  Certificate c = parse_certificate(load_json_file(cert_path));
  if (validate(c)) {
    std::cout << "certificate valid\n";
    return kExitOk;
  }
  std::cout << "certificate INVALID\n";
  return kExitNegative;
}

int cmd_sweep(const std::vector<std::string>& families, long max_dim, uint64_t seed, int trials,
              long zmult, unsigned threads, const std::string& out_path) {
  SweepConfig cfg;
  cfg.families = families;
  cfg.max_total_dim = max_dim;
  cfg.seed = seed;
  cfg.budget_trials = trials;
  cfg.budget_zmult = zmult;
  cfg.threads = threads;
  SweepResult r = run_sweep(cfg);
  emit(out_path, r.report);
  if (!out_path.empty())
    std::cout << "pairs: " << r.totals.pairs << ", failures: " << r.totals.failures.size() << "\n";
  return r.totals.failures.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact degeneration-order toolkit for Dynkin quiver representations"};
  app.require_subcommand(1);

  std::string quiver_path, m_path, n_path, v_path, u_path, rep_path, cert_path;
  std::string dim_csv, format = "text", out_path;
  uint64_t seed = 0;
  int trials = 500;
  long zmult = 3;
  unsigned threads = 0;
  long max_dim = 6;
  std::vector<std::string> families = {"A2", "A3", "A4", "D4"};

  auto* roots = app.add_subcommand("roots", "list positive roots in index order");
  roots->add_option("quiver", quiver_path)->required();

  auto* hom = app.add_subcommand("hom", "hom/ext dimensions and the delta table");
  hom->add_option("quiver", quiver_path)->required();
  hom->add_option("m", m_path)->required();
  hom->add_option("n", n_path)->required();

  auto* dec = app.add_subcommand("decompose", "multiplicity vector of a representation");
  dec->add_option("quiver", quiver_path)->required();
  dec->add_option("rep", rep_path)->required();

  auto* poset = app.add_subcommand("poset", "degeneration poset for a dimension vector");
  poset->add_option("quiver", quiver_path)->required();
  poset->add_option("--dim", dim_csv, "comma-separated dimension vector")->required();
  poset->add_option("--format", format)->check(CLI::IsMember({"text", "graph"}));
  poset->add_option("--out", out_path);

  auto* ext = app.add_subcommand("ext", "cocycle, coboundary and ext dimensions");
  ext->add_option("quiver", quiver_path)->required();
  ext->add_option("v", v_path)->required();
  ext->add_option("u", u_path)->required();
  ext->add_option("--out", out_path);

  auto* edim = app.add_subcommand("e-dim", "dimension of the E-subspace of ext for a pair");
  edim->alias("E-dim");
  edim->add_option("quiver", quiver_path)->required();
  edim->add_option("m", m_path)->required();
  edim->add_option("n", n_path)->required();
  edim->add_option("--v", v_path);
  edim->add_option("--u", u_path);

  auto* wit = app.add_subcommand("witness", "search for an exact-sequence witness of degeneration");
  wit->add_option("quiver", quiver_path)->required();
  wit->add_option("m", m_path)->required();
  wit->add_option("n", n_path)->required();
  wit->add_option("--seed", seed);
  wit->add_option("--budget-trials", trials);
  wit->add_option("--budget-zmult", zmult);
  wit->add_option("--out", out_path);

  auto* cert = app.add_subcommand("certify", "certify regularity in codimension <= 2");
  cert->add_option("quiver", quiver_path)->required();
  cert->add_option("m", m_path)->required();
  cert->add_option("n", n_path)->required();
  cert->add_option("--seed", seed);
  cert->add_option("--budget-trials", trials);
  cert->add_option("--budget-zmult", zmult);
  cert->add_option("--out", out_path);

  auto* val = app.add_subcommand("validate", "recheck a certificate from scratch");
  val->add_option("certificate", cert_path)->required();

  auto* sweep = app.add_subcommand("sweep", "certify all codim 1-2 pairs across families");
  sweep->add_option("--families", families, "e.g. A2 A3 A4 D4");
  sweep->add_option("--max-dim", max_dim);
  sweep->add_option("--seed", seed);
  sweep->add_option("--budget-trials", trials);
  sweep->add_option("--budget-zmult", zmult);
  sweep->add_option("--threads", threads);
  sweep->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) return cmd_roots(quiver_path);
    if (hom->parsed()) return cmd_hom(quiver_path, m_path, n_path);
    if (dec->parsed()) return cmd_decompose(quiver_path, rep_path);
    if (poset->parsed()) return cmd_poset(quiver_path, dim_csv, format, out_path);
    if (ext->parsed()) return cmd_ext(quiver_path, v_path, u_path, out_path);
    if (edim->parsed()) return cmd_edim(quiver_path, m_path, n_path, v_path, u_path);
    if (wit->parsed()) return cmd_witness(quiver_path, m_path, n_path, seed, trials, zmult, out_path);
    if (cert->parsed()) return cmd_certify(quiver_path, m_path, n_path, seed, trials, zmult, out_path);
    if (val->parsed()) return cmd_validate(cert_path);
    if (sweep->parsed()) return cmd_sweep(families, max_dim, seed, trials, zmult, threads, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
