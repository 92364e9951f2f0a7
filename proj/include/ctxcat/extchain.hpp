// A chain of context extensions of a model object, with the bookkeeping maps
// (projection composites, variable terms, weakenings) used throughout the
// homotopy and diagram machinery.

#ifndef CTXCAT_EXTCHAIN_HPP
#define CTXCAT_EXTCHAIN_HPP

#include <vector>

#include "ctxcat/model.hpp"

namespace ctxcat {

struct ExtChain {
  ModelPtr m;
  std::vector<ObjP> objs;    // objs[0] = root
  std::vector<TypeP> types;  // types[i] over objs[i]; objs[i+1] = objs[i].types[i]

  static ExtChain at(ModelPtr mm, ObjP root) {
    ExtChain c;
    c.m = std::move(mm);
    c.objs.push_back(std::move(root));
    return c;
  }

  const ObjP& obj() const { return objs.back(); }
  int size() const { return static_cast<int>(types.size()); }

  ExtChain push(const TypeP& A) const {
    ExtChain c = *this;
    c.objs.push_back(m->ext(obj(), A));
    c.types.push_back(A);
    return c;
  }

  // Composite projection obj() -> objs[k].
  MapP proj_to(int k) const {
    MapP p = m->id_map(obj());
    for (int i = size() - 1; i >= k; --i) p = m->comp(m->proj(objs[i], types[i]), p);
    return p;
  }

  // The variable of slot i (0-based from the root), weakened to obj().
  TermP var(int i) const {
    TermP q = m->var_term(objs[i], types[i]);
    if (i + 1 == size() + 1) return q;
    // q lives over objs[i+1]; weaken along the projection composite.
    MapP down = proj_to(i + 1);
    return m->subst_term(down, q);
  }

  // The type of slot i, weakened to obj().
  TypeP var_type(int i) const { return m->reindex(proj_to(i), types[i]); }

  // Weaken a type over objs[k] to obj().
  TypeP wk_type(int k, const TypeP& A) const { return m->reindex(proj_to(k), A); }
  TermP wk_term(int k, const TermP& a) const { return m->subst_term(proj_to(k), a); }

  // Map obj() -> target.obj() extending `root_map` by the given terms (one
  // per slot of `target` beyond its root).
  static MapP tuple(const ExtChain& target, MapP root_map, const std::vector<TermP>& terms) {
    MapP f = std::move(root_map);
    for (int i = 0; i < target.size(); ++i) f = target.m->ext_map(f, target.types[i], terms[static_cast<size_t>(i)]);
    return f;
  }

  // The i-th component term of a map v : X -> obj(): a term over X.
  TermP component(const MapP& v, int i) const {
    MapP through = m->comp(proj_to(i + 1), v);
    return m->last_term(through, objs[i], types[i]);
  }
};

}  // namespace ctxcat

#endif  // CTXCAT_EXTCHAIN_HPP
