// Identity contexts of context extensions (Garner): for an extension
// Gamma.Delta of length m, the further extension Gamma.Delta.p*Delta.Id_Delta
// of length 3m, with reflexivity section, projections, and an elimination
// operation computing on refl. Internally the interleaved form
// (x0_1, x1_1, p_1, x0_2, ...) is used, where every eliminator's base case is
// generic; the block form of the definition is reached by an exchange map.

#ifndef CTXCAT_IDEXT_HPP
#define CTXCAT_IDEXT_HPP

#include <memory>
#include <vector>

#include "ctxcat/paths.hpp"

namespace ctxcat {

struct IdExt {
  ModelPtr m;
  ObjP root;
  std::vector<TypeP> delta;  // entry i over diag.objs[i]
  ExtChain diag;             // root.Delta
  ExtChain inter;            // root.(x0_1, x1_1, p_1).(x0_2, ...)
  ExtChain block;            // root.Delta.p*Delta.Id_Delta
  MapP to_inter;             // block.obj() -> inter.obj()
  MapP to_block;             // inter.obj() -> block.obj()
  MapP pi0, pi1;             // block.obj() -> diag.obj()
  MapP rho;                  // diag.obj() -> block.obj()

  int len() const { return static_cast<int>(delta.size()); }
};

IdExt make_idext(const ModelPtr& m, const ObjP& root, const std::vector<TypeP>& delta);

// Elimination over the interleaved identity context extended by parameters:
// motive over inter+zs, base over diag+zs[rho-side]; returns a term over
// inter+zs of the motive, computing to the base on the reflexivity section.
TermP idext_elim(const IdExt& ie, const std::vector<TypeP>& zs, const TypeP& motive, const TermP& base);

namespace detail_idext {

// A term over `full` (= root.x1.x2.q.rest) of `motive`, by J on the front
// triple with the rest as Frobenius parameters. `base` lives over
// root.(x:A).rest[diag], built by the caller as base_ctx.
inline TermP j_front(const ModelPtr& m, const ObjP& root, const TypeP& A, const ExtChain& full,
                     const TypeP& motive, const TermP& base) {
  const int n = full.size();  // 3 + k
  // Doubled chain: full extended by primed copies of all its entries, with
  // w : doubled-prefix -> full-prefix the evident selection.
  ExtChain doubled = full;
  MapP w = full.proj_to(0);
  std::vector<TypeP> primed;
  for (int i = 0; i < n; ++i) {
    TypeP Ti = m->reindex(w, full.types[static_cast<size_t>(i)]);
    primed.push_back(Ti);
    doubled = doubled.push(Ti);
    w = m->connecting(w, full.types[static_cast<size_t>(i)]);
  }
  Model::JArgs args;
  args.A = m->reindex(full.proj_to(0), A);
  for (int i = 3; i < n; ++i) args.deltas.push_back(primed[static_cast<size_t>(i)]);
  args.motive = m->reindex(w, motive);

  // The J base lives over full.(x':A').rest'[diag]; reindex the given base
  // (over root.(x:A).rest[diag]) along the evident selection.
  ExtChain bctx = ExtChain::at(m, root).push(A);  // root.x
  MapP dfold;                                     // bctx-top -> full-prefix(3)
  {
    MapP d0 = m->ext_map(bctx.proj_to(0), A, bctx.var(0));
    MapP d1 = m->ext_map(d0, full.types[1], bctx.var(0));
    TermP rfl = m->refl_term(bctx.obj(), bctx.var_type(0), bctx.var(0));
    dfold = m->ext_map(d1, full.types[2], rfl);
  }
  ExtChain jtop = ExtChain::at(m, full.obj()).push(args.A);  // full.x'
  MapP seltop = m->ext_map(m->comp(full.proj_to(0), jtop.proj_to(0)), A, jtop.var(0));  // jtop -> root.x
  for (int i = 3; i < n; ++i) {
    TypeP Td = m->reindex(dfold, full.types[static_cast<size_t>(i)]);  // over bctx
    TypeP Tj = m->reindex(seltop, Td);                                 // over jtop
    bctx = bctx.push(Td);
    dfold = m->connecting(dfold, full.types[static_cast<size_t>(i)]);
    jtop = jtop.push(Tj);
    seltop = m->connecting(seltop, Td);
  }
  args.base = m->subst_term(seltop, base);
  args.lhs = full.var(0);
  args.rhs = full.var(1);
  args.path = full.var(2);
  for (int i = 3; i < n; ++i) args.params.push_back(full.var(i));
  return m->j_term(full.obj(), args);
}

}  // namespace detail_idext

inline IdExt make_idext(const ModelPtr& m, const ObjP& root, const std::vector<TypeP>& delta) {
  IdExt ie;
  ie.m = m;
  ie.root = root;
  ie.delta = delta;
  ie.diag = ExtChain::at(m, root);
  for (auto& T : delta) ie.diag = ie.diag.push(T);
  const int n = static_cast<int>(delta.size());

  // Interleaved chain.
  ie.inter = ExtChain::at(m, root);
  auto sel_partial = [&](const ExtChain& cur, int upto, int offset) {
    // map cur.obj() -> diag.objs[upto] selecting copy `offset` (0 or 1)
    std::vector<TermP> comps;
    for (int i = 0; i < upto; ++i) comps.push_back(cur.var(3 * i + offset));
    ExtChain target = ExtChain::at(m, root);
    for (int i = 0; i < upto; ++i) target = target.push(delta[static_cast<size_t>(i)]);
    return ExtChain::tuple(target, cur.proj_to(0), comps);
  };
  for (int k = 0; k < n; ++k) {
    // x0_k
    TypeP T0 = m->reindex(sel_partial(ie.inter, k, 0), delta[static_cast<size_t>(k)]);
    ie.inter = ie.inter.push(T0);
    // x1_k
    TypeP T1 = m->reindex(sel_partial(ie.inter, k, 1), delta[static_cast<size_t>(k)]);
    ie.inter = ie.inter.push(T1);
    // p_k : Id(B_k[second], tr_k, x1_k)
    TermP tr;
    TypeP Bsecond = m->reindex(sel_partial(ie.inter, k + 1, 1), delta[static_cast<size_t>(k)]);
    // wait: after pushing x1_k the second-copy prefix of length k+1 uses
    // x1_k itself as its last component; Bsecond must be B_k at the second
    // copy of the *previous* entries, i.e. sel over k entries.
    Bsecond = m->reindex(sel_partial(ie.inter, k, 1), delta[static_cast<size_t>(k)]);
    if (k == 0) {
      tr = ie.inter.var(0);
    } else {
      // Transport x0_k along the earlier paths: eliminate over the
      // sub-identity-context of delta[0..k) with one parameter s : B_k[first].
      IdExt sub = make_idext(m, root, std::vector<TypeP>(delta.begin(), delta.begin() + k));
      TypeP zfirst = m->reindex(sel_partial(sub.inter, k, 0), delta[static_cast<size_t>(k)]);
      TypeP zmotive;
      {
        ExtChain subz = sub.inter.push(zfirst);
        std::vector<TermP> comps;
        for (int i = 0; i < k; ++i) comps.push_back(subz.var(3 * i + 1));
        ExtChain target = ExtChain::at(m, root);
        for (int i = 0; i < k; ++i) target = target.push(delta[static_cast<size_t>(i)]);
        MapP sel1 = ExtChain::tuple(target, subz.proj_to(0), comps);
        zmotive = m->reindex(sel1, delta[static_cast<size_t>(k)]);
      }
      // base: over diag(k).(s : B_k) |- s
      ExtChain dk = ExtChain::at(m, root);
      for (int i = 0; i < k; ++i) dk = dk.push(delta[static_cast<size_t>(i)]);
      ExtChain dks = dk.push(delta[static_cast<size_t>(k)]);
      TermP zbase = dks.var(k);
      TermP elim = idext_elim(sub, {zfirst}, zmotive, zbase);
      // Pull back along cur -> sub.inter.(s): send x/p-vars and s := x0_k.
      std::vector<TermP> comps;
      for (int i = 0; i < 3 * k; ++i) comps.push_back(ie.inter.var(i));
      comps.push_back(ie.inter.var(3 * k));  // s := x0_k
      ExtChain target = sub.inter.push(zfirst);
      MapP psi = ExtChain::tuple(target, ie.inter.proj_to(0), comps);
      tr = m->subst_term(psi, elim);
    }
    TypeP P = m->id_type(ie.inter.obj(), Bsecond, tr, ie.inter.var(3 * k + 1));
    ie.inter = ie.inter.push(P);
  }

  // Block chain: root.Delta.Delta'.P, via exchange with the interleaved form.
  ie.block = ie.diag;
  auto block_sel = [&](const ExtChain& cur, int upto, int offset) {
    // offset 0: first copies are the diag slots; offset 1: the primed block
    std::vector<TermP> comps;
    for (int i = 0; i < upto; ++i) comps.push_back(cur.var(offset == 0 ? i : n + i));
    ExtChain target = ExtChain::at(m, root);
    for (int i = 0; i < upto; ++i) target = target.push(delta[static_cast<size_t>(i)]);
    return ExtChain::tuple(target, cur.proj_to(0), comps);
  };
  for (int k = 0; k < n; ++k) {
    TypeP T1 = m->reindex(block_sel(ie.block, k, 1), delta[static_cast<size_t>(k)]);
    ie.block = ie.block.push(T1);
  }
  for (int k = 0; k < n; ++k) {
    // exchange map from the current block chain into the interleaved prefix
    // of length 3k+2 (through x1_k), then reindex the interleaved path type.
    std::vector<TermP> comps;
    for (int i = 0; i < k; ++i) {
      comps.push_back(ie.block.var(i));          // x0_i
      comps.push_back(ie.block.var(n + i));      // x1_i
      comps.push_back(ie.block.var(2 * n + i));  // p_i
    }
    comps.push_back(ie.block.var(k));
    comps.push_back(ie.block.var(n + k));
    ExtChain target = ExtChain::at(m, root);
    for (size_t i = 0; i < static_cast<size_t>(3 * k + 2); ++i) target = target.push(ie.inter.types[i]);
    MapP ex = ExtChain::tuple(target, ie.block.proj_to(0), comps);
    TypeP P = m->reindex(ex, ie.inter.types[static_cast<size_t>(3 * k + 2)]);
    ie.block = ie.block.push(P);
  }

  // Exchange isos and projections.
  {
    std::vector<TermP> comps;
    for (int i = 0; i < n; ++i) {
      comps.push_back(ie.block.var(i));
      comps.push_back(ie.block.var(n + i));
      comps.push_back(ie.block.var(2 * n + i));
    }
    ie.to_inter = ExtChain::tuple(ie.inter, ie.block.proj_to(0), comps);
  }
  {
    std::vector<TermP> comps;
    for (int i = 0; i < n; ++i) comps.push_back(ie.inter.var(3 * i));
    for (int i = 0; i < n; ++i) comps.push_back(ie.inter.var(3 * i + 1));
    for (int i = 0; i < n; ++i) comps.push_back(ie.inter.var(3 * i + 2));
    ie.to_block = ExtChain::tuple(ie.block, ie.inter.proj_to(0), comps);
  }
  {
    std::vector<TermP> c0, c1;
    for (int i = 0; i < n; ++i) c0.push_back(ie.block.var(i));
    for (int i = 0; i < n; ++i) c1.push_back(ie.block.var(n + i));
    ie.pi0 = ExtChain::tuple(ie.diag, ie.block.proj_to(0), c0);
    ie.pi1 = ExtChain::tuple(ie.diag, ie.block.proj_to(0), c1);
  }
  {
    std::vector<TermP> comps;
    for (int i = 0; i < n; ++i) comps.push_back(ie.diag.var(i));
    for (int i = 0; i < n; ++i) comps.push_back(ie.diag.var(i));
    for (int i = 0; i < n; ++i) {
      TermP x = ie.diag.var(i);
      TypeP Ti = ie.diag.var_type(i);
      comps.push_back(m->refl_term(ie.diag.obj(), Ti, x));
    }
    ie.rho = ExtChain::tuple(ie.block, ie.diag.proj_to(0), comps);
  }
  return ie;
}

inline TermP idext_elim(const IdExt& ie, const std::vector<TypeP>& zs, const TypeP& motive, const TermP& base) {
  const ModelPtr& m = ie.m;
  const int n = ie.len();
  if (n == 0) return base;

  // Tail identity context over root.B1.
  const TypeP& B1 = ie.delta[0];
  ObjP rootx = m->ext(ie.root, B1);
  std::vector<TypeP> dtail(ie.delta.begin() + 1, ie.delta.end());
  IdExt tail = make_idext(m, rootx, dtail);

  // Diagonal substitution d : root.x.<tail-inter>.<zs'> -> inter.<zs>, built
  // by the connecting chain over the front-diagonal embedding.
  ExtChain cb = ExtChain::at(m, ie.root).push(B1);
  MapP d0 = m->ext_map(cb.proj_to(0), B1, cb.var(0));
  TypeP B1w = ie.inter.types[1];
  MapP d1 = m->ext_map(d0, B1w, cb.var(0));
  TermP rfl = m->refl_term(cb.obj(), cb.var_type(0), cb.var(0));
  MapP dm = m->ext_map(d1, ie.inter.types[2], rfl);  // root.x -> inter-prefix-3
  ExtChain full = ie.inter;
  for (auto& z : zs) full = full.push(z);
  std::vector<TypeP> tail_zs;
  {
    MapP cur = dm;
    // entries 3.. of inter, then zs: their diagonal reindexings form the
    // tail-inter chain followed by the transported parameters.
    for (int i = 3; i < ie.inter.size(); ++i) {
      cur = m->connecting(cur, ie.inter.types[static_cast<size_t>(i)]);
    }
    for (auto& z : zs) {
      tail_zs.push_back(m->reindex(cur, z));
      cur = m->connecting(cur, z);
    }
    // tail motive
    TypeP tmot = m->reindex(cur, motive);
    TermP tbase = base;  // same context: diag+zs on the rho side
    TermP telim = idext_elim(tail, tail_zs, tmot, tbase);
    return detail_idext::j_front(m, ie.root, B1, full, motive, telim);
  }
}

}  // namespace ctxcat

#endif  // CTXCAT_IDEXT_HPP
