// Context morphisms between telescopes: simultaneous substitutions, with
// composition strictly associative at the syntax level so that the canonical
// pullback equations hold on the nose.

#ifndef CTXCAT_SUBST_HPP
#define CTXCAT_SUBST_HPP

#include <string>
#include <vector>

#include "ctxcat/kernel.hpp"

namespace ctxcat {

// A map src -> tgt; comps[i] (over src) substitutes tgt entry i, and checks
// against tgt's i-th type instantiated at the preceding components.
struct Subst {
  Telescope src;
  Telescope tgt;
  std::vector<ExprP> comps;
};

inline ExprP apply_subst(const Subst& f, const ExprP& e) { return apply_comps(e, f.comps); }

inline Telescope apply_subst_tele(const Subst& f, const Telescope& ext) {
  // ext extends f.tgt; result extends f.src.
  Telescope out;
  std::vector<ExprP> comps = f.comps;
  int depth = 0;
  for (auto& [name, ty] : ext.entries) {
    ExprP t = inst_at(ty, depth, comps);
    out.push(name, t);
    ++depth;
  }
  return out;
}

inline Subst id_subst(const Telescope& G) {
  Subst s{G, G, {}};
  const int n = G.size();
  s.comps.reserve(n);
  for (int i = 0; i < n; ++i) s.comps.push_back(var(n - 1 - i));
  return s;
}

inline bool is_id_subst(const Subst& f) {
  if (f.comps.size() != static_cast<size_t>(f.src.size()) || f.src.size() != f.tgt.size()) return false;
  const int n = f.src.size();
  for (int i = 0; i < n; ++i)
    if (f.comps[i]->tag != Tag::Var || f.comps[i]->index != n - 1 - i) return false;
  return true;
}

// Composite g after f (f : G -> D, g : D -> T) as a map G -> T.
inline Subst compose_subst(const Subst& g, const Subst& f) {
  Subst r{f.src, g.tgt, {}};
  r.comps.reserve(g.comps.size());
  for (auto& c : g.comps) r.comps.push_back(apply_subst(f, c));
  return r;
}

// Canonical projection G.rest -> G.prefix(n).
inline Subst proj_subst(const Telescope& G, int target_len) {
  Subst s{G, G.prefix(target_len), {}};
  const int n = G.size();
  for (int i = 0; i < target_len; ++i) s.comps.push_back(var(n - 1 - i));
  return s;
}

// Weakening of f : G -> D to G.ext -> D.
inline Subst weaken_subst(const Subst& f, const Telescope& ext_over_src) {
  Subst s{f.src, f.tgt, {}};
  for (auto& [name, ty] : ext_over_src.entries) s.src.push(name, ty);
  const int d = ext_over_src.size();
  s.comps.reserve(f.comps.size());
  for (auto& c : f.comps) s.comps.push_back(shift(c, d));
  return s;
}

// <f, t> : src(f) -> tgt(f).A, where t : f*A over src(f).
inline Subst ext_subst(const Subst& f, const std::string& name, const ExprP& A, const ExprP& t) {
  Subst s{f.src, f.tgt.extended(name, A), f.comps};
  s.comps.push_back(t);
  return s;
}

// Connecting map f.A : src(f).f*A -> tgt(f).A over f.
inline Subst connecting_subst(const Subst& f, const std::string& name, const ExprP& A) {
  Subst s{f.src.extended(name, apply_subst(f, A)), f.tgt.extended(name, A), {}};
  s.comps.reserve(f.comps.size() + 1);
  for (auto& c : f.comps) s.comps.push_back(shift(c, 1));
  s.comps.push_back(var(0));
  return s;
}

// Section of p_A determined by t : Tm(G, A).
inline Subst section_subst(const Telescope& G, const std::string& name, const ExprP& A, const ExprP& t) {
  return ext_subst(id_subst(G), name, A, t);
}

inline bool subst_eq_syntactic(const Subst& f, const Subst& g) {
  if (!tele_eq(f.src, g.src) || !tele_eq(f.tgt, g.tgt)) return false;
  if (f.comps.size() != g.comps.size()) return false;
  for (size_t i = 0; i < f.comps.size(); ++i)
    if (!expr_eq(f.comps[i], g.comps[i])) return false;
  return true;
}

// Componentwise typechecking of a substitution.
inline void check_subst(const Kernel& k, const Subst& f) {
  if (f.comps.size() != static_cast<size_t>(f.tgt.size()))
    throw KernelError("substitution has " + std::to_string(f.comps.size()) + " components for a target of length " +
                      std::to_string(f.tgt.size()));
  for (size_t i = 0; i < f.comps.size(); ++i) {
    ExprP ty = apply_comps(f.tgt.entries[i].second, {f.comps.begin(), f.comps.begin() + i});
    k.check_term(f.src, f.comps[i], ty);
  }
}

// Normal form of a substitution: each component at its instantiated type.
inline Subst nf_subst(const Kernel& k, const Subst& f) {
  Subst r{k.nf_tele(Telescope{}, f.src), k.nf_tele(Telescope{}, f.tgt), {}};
  r.comps.reserve(f.comps.size());
  for (size_t i = 0; i < f.comps.size(); ++i) {
    ExprP ty = apply_comps(f.tgt.entries[i].second, {f.comps.begin(), f.comps.begin() + i});
    r.comps.push_back(k.nf_term(f.src, f.comps[i], ty));
  }
  return r;
}

inline bool subst_eq(const Kernel& k, const Subst& f, const Subst& g) {
  if (f.tgt.size() != g.tgt.size() || f.src.size() != g.src.size()) return false;
  if (!tele_eq(k.nf_tele(Telescope{}, f.src), k.nf_tele(Telescope{}, g.src))) return false;
  if (!tele_eq(k.nf_tele(Telescope{}, f.tgt), k.nf_tele(Telescope{}, g.tgt))) return false;
  for (size_t i = 0; i < f.comps.size(); ++i) {
    ExprP ty = apply_comps(f.tgt.entries[i].second, {f.comps.begin(), f.comps.begin() + i});
    if (!k.conv_term(f.src, ty, f.comps[i], g.comps[i])) return false;
  }
  return true;
}

inline std::string show(const Subst& f) {
  std::string s = "[";
  auto ns = f.src.names();
  for (size_t i = 0; i < f.comps.size(); ++i) {
    if (i) s += ", ";
    s += f.tgt.entries[i].first + " := " + show(f.comps[i], ns);
  }
  return s + "]";
}

}  // namespace ctxcat

#endif  // CTXCAT_SUBST_HPP
