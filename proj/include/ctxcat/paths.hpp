// Path algebra over an arbitrary model with Id-types: transport, inversion,
// composition, action on paths. Transport and its relatives are fixed once
// here, via the J-structure; the orientation is: paths rewrite their left
// endpoint to their right endpoint.

#ifndef CTXCAT_PATHS_HPP
#define CTXCAT_PATHS_HPP

#include "ctxcat/extchain.hpp"

namespace ctxcat {
namespace paths {

// The chain G.(x1:A).(x2:A).(q:Id(A,x1,x2)).
inline ExtChain id_triple(const ModelPtr& m, const ObjP& G, const TypeP& A) {
  ExtChain c = ExtChain::at(m, G).push(A);
  c = c.push(c.var_type(0));
  TypeP q = m->id_type(c.obj(), c.var_type(0), c.var(0), c.var(1));
  return c.push(q);
}

inline TermP j_binary(const ModelPtr& m, const ObjP& G, const TypeP& A, const TypeP& motive, const TermP& base,
                      const TermP& a, const TermP& b, const TermP& p) {
  Model::JArgs args;
  args.A = A;
  args.motive = motive;
  args.base = base;
  args.lhs = a;
  args.rhs = b;
  args.path = p;
  return m->j_term(G, args);
}

// Selection map triple.obj() -> G.A picking the x1 (which = 0) or x2
// (which = 1) copy.
inline MapP triple_select(const ModelPtr& m, const ObjP& G, const TypeP& A, const ExtChain& tri, int which) {
  MapP root = tri.proj_to(0);
  return m->ext_map(root, A, tri.var(which));
}

// transport along p : Id(A, a, b) in the family B over G.A
inline TermP transport(const ModelPtr& m, const ObjP& G, const TypeP& A, const TypeP& B, const TermP& a,
                       const TermP& b, const TermP& p, const TermP& u) {
  ExtChain tri = id_triple(m, G, A);
  TypeP D = m->reindex(triple_select(m, G, A, tri, 0), B);  // B[x1]
  ExtChain triD = tri.push(D);
  TypeP C = m->reindex(m->comp(triple_select(m, G, A, tri, 1), triD.proj_to(3)), B);  // B[x2]
  // base: over G.(x:A).(s:B[x]) |- s
  ExtChain cb = ExtChain::at(m, G).push(A).push(B);
  TermP d = cb.var(1);
  Model::JArgs args;
  args.A = A;
  args.deltas = {D};
  args.motive = C;
  args.base = d;
  args.lhs = a;
  args.rhs = b;
  args.path = p;
  args.params = {u};
  return m->j_term(G, args);
}

// sym : Id(A, a, b) -> Id(A, b, a)
inline TermP sym(const ModelPtr& m, const ObjP& G, const TypeP& A, const TermP& a, const TermP& b, const TermP& p) {
  ExtChain tri = id_triple(m, G, A);
  TypeP motive = m->id_type(tri.obj(), tri.var_type(0), tri.var(1), tri.var(0));
  ExtChain cb = ExtChain::at(m, G).push(A);
  TermP base = m->refl_term(cb.obj(), cb.var_type(0), cb.var(0));
  return j_binary(m, G, A, motive, base, a, b, p);
}

// trans : Id(A, a, b) -> Id(A, b, c) -> Id(A, a, c), by J on the second path
// with the first as a Frobenius parameter.
inline TermP trans(const ModelPtr& m, const ObjP& G, const TypeP& A, const TermP& a, const TermP& b, const TermP& c,
                   const TermP& p, const TermP& q) {
  ExtChain tri = id_triple(m, G, A);
  TypeP D = m->id_type(tri.obj(), tri.var_type(0), tri.wk_term(0, a), tri.var(0));  // Id(A, a, x1)
  ExtChain triD = tri.push(D);
  TypeP C = m->id_type(triD.obj(), triD.var_type(0), triD.wk_term(0, a), triD.var(1));  // Id(A, a, x2)
  ExtChain cb = ExtChain::at(m, G).push(A);
  TypeP E = m->id_type(cb.obj(), cb.var_type(0), cb.wk_term(0, a), cb.var(0));
  ExtChain cbe = cb.push(E);
  TermP base = cbe.var(1);  // e |- e
  Model::JArgs args;
  args.A = A;
  args.deltas = {D};
  args.motive = C;
  args.base = base;
  args.lhs = b;
  args.rhs = c;
  args.path = q;
  args.params = {p};
  return m->j_term(G, args);
}

// Action on paths of a fibrewise term f : over G.(x:A) of (constant) type B
// over G: ap(f) : Id(B, f[a], f[b]).
inline TermP ap(const ModelPtr& m, const ObjP& G, const TypeP& A, const TypeP& B, const TermP& fbody, const TermP& a,
                const TermP& b, const TermP& p) {
  ExtChain tri = id_triple(m, G, A);
  auto at = [&](int which) {
    MapP sel = triple_select(m, G, A, tri, which);
    return m->subst_term(sel, fbody);
  };
  TypeP Bw = m->reindex(tri.proj_to(0), B);
  TypeP motive = m->id_type(tri.obj(), Bw, at(0), at(1));
  ExtChain cb = ExtChain::at(m, G).push(A);
  TermP base = m->refl_term(cb.obj(), m->reindex(cb.proj_to(0), B), fbody);
  return j_binary(m, G, A, motive, base, a, b, p);
}

// Dependent action on paths: f over G.(x:A) of type B over G.A:
// apd(f) : Id(B[b], transport_p(f[a]), f[b]).
inline TermP apd(const ModelPtr& m, const ObjP& G, const TypeP& A, const TypeP& B, const TermP& fbody, const TermP& a,
                 const TermP& b, const TermP& p) {
  ExtChain tri = id_triple(m, G, A);
  MapP s1 = triple_select(m, G, A, tri, 0);
  MapP s2 = triple_select(m, G, A, tri, 1);
  TypeP B2 = m->reindex(s2, B);
  // transport over the triple of f[x1] along q
  TermP tr = transport(m, tri.obj(), tri.var_type(0), m->reindex(m->connecting(tri.proj_to(0), A), B), tri.var(0),
                       tri.var(1), tri.var(2), m->subst_term(s1, fbody));
  TypeP motive = m->id_type(tri.obj(), B2, tr, m->subst_term(s2, fbody));
  ExtChain cb = ExtChain::at(m, G).push(A);
  TermP base = m->refl_term(cb.obj(), B, fbody);
  return j_binary(m, G, A, motive, base, a, b, p);
}

// tr_q(refl a) = q, for q : Id(A, a, y): transporting reflexivity along a
// path in the based family Id(A, x1, -) yields the path.
inline TermP transport_refl_is_path(const ModelPtr& m, const ObjP& G, const TypeP& A, const TermP& a, const TermP& y,
                                    const TermP& q) {
  ExtChain tri = id_triple(m, G, A);
  // family over (x1).(z:A): Id(A, x1, z); transported refl(x1) along q
  ExtChain c1 = ExtChain::at(m, G).push(A);             // G.x1
  ExtChain c1z = c1.push(c1.var_type(0));               // G.x1.z
  TypeP fam = m->id_type(c1z.obj(), c1z.var_type(0), c1z.var(0), c1z.var(1));  // Id(A, x1, z)
  // over the triple: transport along q of refl(x1) in fam[x1-fixed]
  MapP s1 = triple_select(m, G, A, tri, 0);
  // fam over G.x1.z ; connecting chain along s1 : tri -> G.x1 gives fam over tri.z
  TypeP famT = m->reindex(m->connecting(s1, c1.var_type(0)), fam);
  TermP reflx = m->refl_term(tri.obj(), tri.var_type(0), tri.var(0));
  TermP tr = transport(m, tri.obj(), tri.var_type(0), famT, tri.var(0), tri.var(1), tri.var(2), reflx);
  TypeP idx1x2 = m->id_type(tri.obj(), tri.var_type(0), tri.var(0), tri.var(1));
  TypeP motive = m->id_type(tri.obj(), idx1x2, tr, tri.var(2));
  ExtChain cb = ExtChain::at(m, G).push(A);
  TermP rr = m->refl_term(cb.obj(), m->id_type(cb.obj(), cb.var_type(0), cb.var(0), cb.var(0)),
                          m->refl_term(cb.obj(), cb.var_type(0), cb.var(0)));
  return j_binary(m, G, A, motive, rr, a, y, q);
}

}  // namespace paths
}  // namespace ctxcat

#endif  // CTXCAT_PATHS_HPP
