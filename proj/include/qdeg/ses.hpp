#pragma once

#include <optional>

#include "qdeg/category.hpp"
#include "qdeg/rng.hpp"

namespace qdeg {

// Short exact sequence 0 -> left -> middle -> right -> 0 with explicit maps.
// Exactness is verified on construction and never assumed afterwards.
struct Ses {
  Rep left, middle, right;
  VMaps inj, surj;
};

inline Ses make_ses(Rep left, Rep middle, Rep right, VMaps inj, VMaps surj) {
  if (!same_quiver(left, middle) || !same_quiver(middle, right))
    throw Error("sequence over mismatched quivers");
  if (!intertwines(left, middle, inj) || !intertwines(middle, right, surj))
    throw InternalError("sequence maps are not morphisms");
  const int n = left.quiver->vertex_count();
  for (int i = 0; i < n; ++i) {
    if (inj[i].rank() != left.dim[i]) throw InternalError("sequence: injection not injective");
    if (surj[i].rank() != right.dim[i]) throw InternalError("sequence: surjection not surjective");
    if (!(surj[i] * inj[i]).is_zero()) throw InternalError("sequence: surj o inj != 0");
    if (left.dim[i] + right.dim[i] != middle.dim[i])
      throw InternalError("sequence: dimension count fails");
  }
  return Ses{std::move(left), std::move(middle), std::move(right), std::move(inj), std::move(surj)};
}

// Iso classes of the three terms; all delta computations live on these.
struct SesClasses {
  ModuleSpec left, middle, right;
};

inline SesClasses classes_of(const ModuleCategory& cat, const Ses& s) {
  return SesClasses{cat.decompose(s.left), cat.decompose(s.middle), cat.decompose(s.right)};
}

// delta_sigma(X) = [U + V, X] - [W, X]; nonnegative for every exact sequence.
inline long delta_sigma(const ModuleCategory& cat, const SesClasses& c, const ModuleSpec& x) {
  long d = cat.hom(c.left + c.right, x) - cat.hom(c.middle, x);
  if (d < 0) throw InternalError("delta_sigma is negative");
  return d;
}

inline long delta_prime_sigma(const ModuleCategory& cat, const SesClasses& c, const ModuleSpec& x) {
  long d = cat.hom(x, c.left + c.right) - cat.hom(x, c.middle);
  if (d < 0) throw InternalError("delta_prime_sigma is negative");
  return d;
}

// A sequence splits exactly when the middle is the direct sum of the ends.
inline bool splits(const ModuleCategory& cat, const Ses& s) {
  SesClasses c = classes_of(cat, s);
  return c.middle == c.left + c.right;
}
inline bool splits(const SesClasses& c) { return c.middle == c.left + c.right; }

// --- Pushout / pullback ----------------------------------------------------

// Pushout of the sequence under f: left -> X. Returns the new bottom row
// 0 -> X -> PO -> right -> 0, the comparison map middle -> PO, and the total
// sequence 0 -> left -> X (+) middle -> PO -> 0 that computes the pushout.
struct PushoutResult {
  Ses out;
  VMaps mid_map;  // middle -> out.middle
  Ses total;
};

inline PushoutResult pushout(const Ses& s, const Morphism& f) {
  if (f.src.dim != s.left.dim) throw Error("pushout: map does not start at the left term");
  Rep t = direct_sum({f.dst, s.middle});
  const int n = t.quiver->vertex_count();
  VMaps u;  // (f; -inj): left -> X (+) middle
  for (int i = 0; i < n; ++i) u.push_back(Mat::vcat(f.maps[i], -s.inj[i]));
  Cokernel co = cokernel(s.left, t, u);

  VMaps inj2, surj2, mid;
  for (int i = 0; i < n; ++i) {
    inj2.push_back(co.proj[i].block(0, 0, co.proj[i].rows(), int(f.dst.dim[i])));
    mid.push_back(co.proj[i].block(0, int(f.dst.dim[i]), co.proj[i].rows(), int(s.middle.dim[i])));
    // right map descends from (0, surj); solve against the projection.
    Mat zs = Mat::hcat(Mat(int(s.right.dim[i]), int(f.dst.dim[i])), s.surj[i]);
    auto b = co.proj[i].solve_left(zs);
    if (!b) throw InternalError("pushout: surjection does not descend");
    surj2.push_back(std::move(*b));
  }
  Ses out = make_ses(f.dst, co.rep, s.right, inj2, surj2);
  Ses tot = make_ses(s.left, t, co.rep, u, co.proj);
  return PushoutResult{std::move(out), std::move(mid), std::move(tot)};
}

// Pullback of the sequence along g: X -> right. Returns the new top row
// 0 -> left -> PB -> X -> 0, the comparison map PB -> middle, and the total
// sequence 0 -> PB -> X (+) middle -> right -> 0.
struct PullbackResult {
  Ses out;
  VMaps mid_map;  // out.middle -> middle
  Ses total;
};

inline PullbackResult pullback(const Ses& s, const Morphism& g) {
  if (g.dst.dim != s.right.dim) throw Error("pullback: map does not end at the right term");
  Rep t = direct_sum({g.src, s.middle});
  const int n = t.quiver->vertex_count();
  VMaps w;  // (g, -surj): X (+) middle -> right
  for (int i = 0; i < n; ++i) w.push_back(Mat::hcat(g.maps[i], -s.surj[i]));
  Kernel ke = kernel(t, s.right, w);

  VMaps inj2, surj2, mid;
  for (int i = 0; i < n; ++i) {
    surj2.push_back(ke.incl[i].block(0, 0, int(g.src.dim[i]), ke.incl[i].cols()));
    mid.push_back(ke.incl[i].block(int(g.src.dim[i]), 0, int(s.middle.dim[i]), ke.incl[i].cols()));
    // left map lifts (0; inj) through the kernel inclusion.
    Mat zi = Mat::vcat(Mat(int(g.src.dim[i]), int(s.left.dim[i])), s.inj[i]);
    auto b = ke.incl[i].solve(zi);
    if (!b) throw InternalError("pullback: injection does not lift");
    inj2.push_back(std::move(*b));
  }
  Ses out = make_ses(s.left, ke.rep, g.src, inj2, surj2);
  Ses tot = make_ses(ke.rep, t, s.right, ke.incl, w);
  return PullbackResult{std::move(out), std::move(mid), std::move(tot)};
}

// --- Splitting off a summand of the right term ------------------------------
//
// Given 0 -> U -> W -> V -> 0 with V ~ V1 (+) V2 and delta'_sigma(V1) = 0,
// produces the shortened exact sequence 0 -> U -> W2 -> V2 -> 0 where
// W ~ V1 (+) W2. The hypothesis makes the V1-inclusion factor through the
// surjection, which splits W.

namespace detail {

// A split monomorphism realize(part) -> target together with a retraction.
// Exists whenever part <= decompose(target); found by sweeping the hom basis
// and then seeded random combinations.
struct SplitMono {
  Morphism mono;
  VMaps retraction;
};

inline std::optional<SplitMono> find_split_mono(const ModuleCategory& cat, const ModuleSpec& part,
                                                const Rep& target, Rng& rng, int trials = 200) {
  Rep p = cat.realize(part);
  std::vector<Morphism> basis = hom_space(p, target);
  std::vector<Morphism> back = hom_space(target, p);
  auto attempt = [&](const VMaps& cand) -> std::optional<SplitMono> {
    if (!is_injective(cand)) return std::nullopt;
    // retraction r in Hom(target, p) with r o cand = 1.
    std::vector<VMaps> composed;
    for (const Morphism& b : back) composed.push_back(compose(b.maps, cand));
    auto coeffs = solve_combination(composed, identity_vmaps(p));
    if (!coeffs) return std::nullopt;
    std::vector<VMaps> raw;
    for (const Morphism& b : back) raw.push_back(b.maps);
    VMaps ret = combine(raw, *coeffs, zero_vmaps(target, p));
    return SplitMono{make_morphism(p, target, cand), std::move(ret)};
  };
  for (const Morphism& b : basis)
    if (auto got = attempt(b.maps)) return got;
  for (int t = 0; t < trials; ++t) {
    VMaps cand = zero_vmaps(p, target);
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
  return std::nullopt;
}

}  // namespace detail

inline Ses split_off(const ModuleCategory& cat, const Ses& s, const ModuleSpec& v1,
                     uint64_t seed = 0) {
  SesClasses c = classes_of(cat, s);
  for (size_t k = 0; k < v1.mult.size(); ++k)
    if (v1.mult[k] > c.right.mult[k]) throw Error("split_off: v1 is not a summand of the right term");
  if (delta_prime_sigma(cat, c, v1) != 0) throw Error("split_off: delta'_sigma(v1) != 0");
  if (v1.is_zero()) return s;

  Rng rng(seed);
  auto sm = detail::find_split_mono(cat, v1, s.right, rng);
  if (!sm) throw InternalError("split_off: no split mono onto v1 found");
  Rep r1 = sm->mono.src;

  // Factor the inclusion through the surjection: sec: R1 -> W, surj o sec = mono.
  std::vector<Morphism> into_w = hom_space(r1, s.middle);
  std::vector<VMaps> composed, raw;
  for (const Morphism& b : into_w) {
    composed.push_back(compose(s.surj, b.maps));
    raw.push_back(b.maps);
  }
  auto coeffs = solve_combination(composed, sm->mono.maps);
  if (!coeffs) throw InternalError("split_off: inclusion does not factor despite delta'=0");
  VMaps sec = combine(raw, *coeffs, zero_vmaps(r1, s.middle));

  // g1 = retraction o surj: W -> R1 has the section sec; W2 = ker(g1).
  VMaps g1 = compose(sm->retraction, s.surj);
  for (size_t v = 0; v < g1.size(); ++v)
    if (!(g1[v] * sec[v] - Mat::identity(int(r1.dim[v]))).is_zero())
      throw InternalError("split_off: section check failed");
  Kernel ker = kernel(s.middle, r1, g1);
  // f factors through W2.
  VMaps f2;
  for (int v = 0; v < r1.quiver->vertex_count(); ++v) {
    auto x = ker.incl[v].solve(s.inj[v]);
    if (!x) throw InternalError("split_off: injection misses the kernel");
    f2.push_back(std::move(*x));
  }
  // quotient of the right term by the split summand.
  Cokernel q2 = cokernel(r1, s.right, sm->mono.maps);
  VMaps g2 = compose(q2.proj, compose(s.surj, ker.incl));
  Ses out = make_ses(s.left, ker.rep, q2.rep, f2, g2);
  // The middle really splits as v1 (+) W2.
  if (!(c.middle == v1 + cat.decompose(ker.rep)))
    throw InternalError("split_off: middle did not split as claimed");
  return out;
}

}  // namespace qdeg
