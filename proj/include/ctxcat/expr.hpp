// Syntactic expressions: terms and types over telescopes, with positional
// (de Bruijn) binders counted from the telescope end.

#ifndef CTXCAT_EXPR_HPP
#define CTXCAT_EXPR_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctxcat {

enum class Tag : std::uint8_t {
  Var,     // bound variable, index counted from the innermost binder
  Sym,     // generator symbol applied to a spine
  IdT,     // Id(A, a, b)
  Unit,    // 1
  Sigma,   // Sigma(A, x.B)
  Pi,      // Pi(A, x.B)
  Refl,    // refl(a)
  J,       // J-eliminator, see below
  TT,      // tt : 1
  Pair,    // pair(a, b)
  Fst,     // fst(p)
  Snd,     // snd(p)
  Lam,     // lam(x.b)
  App,     // app(f, a)
  Funext,  // funext(f, g, h) : Id(Pi(A,B), f, g)
};

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

// J carries `jparams` extra Frobenius parameters; its kids are laid out as
//   [D_1 .. D_k, C, d, a, b, p, s_1 .. s_k]
// where D_i is a type over ctx.(x1:A).(x2:A).(q:Id).D_{<i}, the motive C is a
// type over ctx.(x1).(x2).(q).D, the base case d is a term over
// ctx.(x:A).D[x,x,refl x], and the s_i are the parameter instances over ctx.
// With k = 0 this is the usual J(C, d, a, b, p).
struct Expr {
  Tag tag;
  int index = -1;        // Var
  std::string head;      // Sym
  int jparams = 0;       // J
  std::vector<ExprP> kids;

  Expr(Tag t) : tag(t) {}
};

inline ExprP mk(Tag t, std::vector<ExprP> kids = {}) {
  auto e = std::make_shared<Expr>(t);
  const_cast<Expr&>(*e).kids = std::move(kids);
  return e;
}

inline ExprP var(int ix) {
  auto e = std::make_shared<Expr>(Tag::Var);
  const_cast<Expr&>(*e).index = ix;
  return e;
}

inline ExprP sym(std::string name, std::vector<ExprP> spine = {}) {
  auto e = std::make_shared<Expr>(Tag::Sym);
  const_cast<Expr&>(*e).head = std::move(name);
  const_cast<Expr&>(*e).kids = std::move(spine);
  return e;
}

inline ExprP id_ty(ExprP A, ExprP a, ExprP b) { return mk(Tag::IdT, {std::move(A), std::move(a), std::move(b)}); }
inline ExprP unit_ty() { return mk(Tag::Unit); }
inline ExprP sigma_ty(ExprP A, ExprP B) { return mk(Tag::Sigma, {std::move(A), std::move(B)}); }
inline ExprP pi_ty(ExprP A, ExprP B) { return mk(Tag::Pi, {std::move(A), std::move(B)}); }
inline ExprP refl(ExprP a) { return mk(Tag::Refl, {std::move(a)}); }
inline ExprP tt() { return mk(Tag::TT); }
inline ExprP pair(ExprP a, ExprP b) { return mk(Tag::Pair, {std::move(a), std::move(b)}); }
inline ExprP fst(ExprP p) { return mk(Tag::Fst, {std::move(p)}); }
inline ExprP snd(ExprP p) { return mk(Tag::Snd, {std::move(p)}); }
inline ExprP lam(ExprP b) { return mk(Tag::Lam, {std::move(b)}); }
inline ExprP app(ExprP f, ExprP a) { return mk(Tag::App, {std::move(f), std::move(a)}); }
inline ExprP funext(ExprP f, ExprP g, ExprP h) { return mk(Tag::Funext, {std::move(f), std::move(g), std::move(h)}); }

inline ExprP j_elim(ExprP C, ExprP d, ExprP a, ExprP b, ExprP p) {
  return mk(Tag::J, {std::move(C), std::move(d), std::move(a), std::move(b), std::move(p)});
}

inline ExprP j_elim_frob(std::vector<ExprP> deltas, ExprP C, ExprP d, ExprP a, ExprP b, ExprP p,
                         std::vector<ExprP> params) {
  if (deltas.size() != params.size()) throw std::invalid_argument("j_elim_frob: |deltas| != |params|");
  auto e = std::make_shared<Expr>(Tag::J);
  auto& m = const_cast<Expr&>(*e);
  m.jparams = static_cast<int>(deltas.size());
  m.kids = std::move(deltas);
  m.kids.push_back(std::move(C));
  m.kids.push_back(std::move(d));
  m.kids.push_back(std::move(a));
  m.kids.push_back(std::move(b));
  m.kids.push_back(std::move(p));
  for (auto& s : params) m.kids.push_back(std::move(s));
  return e;
}

// Accessors for J nodes.
inline int j_arity(const Expr& e) { return e.jparams; }
inline const ExprP& j_delta(const Expr& e, int i) { return e.kids[i]; }
inline const ExprP& j_motive(const Expr& e) { return e.kids[e.jparams]; }
inline const ExprP& j_base(const Expr& e) { return e.kids[e.jparams + 1]; }
inline const ExprP& j_lhs(const Expr& e) { return e.kids[e.jparams + 2]; }
inline const ExprP& j_rhs(const Expr& e) { return e.kids[e.jparams + 3]; }
inline const ExprP& j_path(const Expr& e) { return e.kids[e.jparams + 4]; }
inline const ExprP& j_param(const Expr& e, int i) { return e.kids[e.jparams + 5 + i]; }

// Number of extra variables kid `i` of `e` binds.
inline int binder_depth(const Expr& e, int i) {
  switch (e.tag) {
    case Tag::Sigma:
    case Tag::Pi:
      return i == 1 ? 1 : 0;
    case Tag::Lam:
      return 1;
    case Tag::J: {
      const int k = e.jparams;
      if (i < k) return 3 + i;            // D_i
      if (i == k) return 3 + k;           // motive
      if (i == k + 1) return 1 + k;       // base case
      return 0;                           // a, b, p, s_i
    }
    default:
      return 0;
  }
}

bool expr_eq(const ExprP& a, const ExprP& b);

inline bool expr_eq(const ExprP& a, const ExprP& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Var:
      return a->index == b->index;
    case Tag::Sym:
      if (a->head != b->head) return false;
      break;
    case Tag::J:
      if (a->jparams != b->jparams) return false;
      break;
    default:
      break;
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

// shift(e, d, cutoff): add d to every variable index >= cutoff.
inline ExprP shift(const ExprP& e, int d, int cutoff = 0) {
  if (d == 0) return e;
  switch (e->tag) {
    case Tag::Var:
      if (e->index < cutoff) return e;
      if (e->index + d < 0) throw std::logic_error("shift: negative variable index");
      return var(e->index + d);
    default: {
      bool changed = false;
      std::vector<ExprP> ks;
      ks.reserve(e->kids.size());
      for (size_t i = 0; i < e->kids.size(); ++i) {
        auto k = shift(e->kids[i], d, cutoff + binder_depth(*e, static_cast<int>(i)));
        if (k.get() != e->kids[i].get()) changed = true;
        ks.push_back(std::move(k));
      }
      if (!changed) return e;
      auto r = std::make_shared<Expr>(*e);
      const_cast<Expr&>(*r).kids = std::move(ks);
      return r;
    }
  }
}

namespace detail {

// Replace the j variables at depths [off, off+j) by vals (outermost first,
// each over the context below them); variables above are lowered by j.
inline ExprP inst_at_impl(const ExprP& e, int off, const std::vector<ExprP>& vals, int depth) {
  const int j = static_cast<int>(vals.size());
  switch (e->tag) {
    case Tag::Var: {
      const int k = e->index;
      if (k < depth + off) return e;
      if (k < depth + off + j) {
        const ExprP& v = vals[j - 1 - (k - depth - off)];
        return shift(v, depth + off);
      }
      return var(k - j);
    }
    default: {
      bool changed = false;
      std::vector<ExprP> ks;
      ks.reserve(e->kids.size());
      for (size_t i = 0; i < e->kids.size(); ++i) {
        auto k = inst_at_impl(e->kids[i], off, vals, depth + binder_depth(*e, static_cast<int>(i)));
        if (k.get() != e->kids[i].get()) changed = true;
        ks.push_back(std::move(k));
      }
      if (!changed) return e;
      auto r = std::make_shared<Expr>(*e);
      const_cast<Expr&>(*r).kids = std::move(ks);
      return r;
    }
  }
}

}  // namespace detail

// Instantiate the j innermost variables of e (vals outermost-first, over the
// ambient context), keeping `off` binders below them intact.
inline ExprP inst_at(const ExprP& e, int off, const std::vector<ExprP>& vals) {
  if (vals.empty()) return e;
  return detail::inst_at_impl(e, off, vals, 0);
}

inline ExprP inst1(const ExprP& e, const ExprP& v) { return inst_at(e, 0, {v}); }

// Apply an entry-indexed substitution: e lives over a telescope with
// comps.size() entries; comps[i] (over the new context) replaces entry i.
inline ExprP apply_comps(const ExprP& e, const std::vector<ExprP>& comps) {
  std::vector<ExprP> vals(comps);  // outermost-first already
  return inst_at(e, 0, vals);
}

// Largest free variable index + 1 (0 for closed expressions).
inline int free_var_bound(const ExprP& e, int depth = 0) {
  switch (e->tag) {
    case Tag::Var:
      return e->index >= depth ? e->index - depth + 1 : 0;
    default: {
      int m = 0;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        int b = free_var_bound(e->kids[i], depth + binder_depth(*e, static_cast<int>(i)));
        if (b > m) m = b;
      }
      return m;
    }
  }
}

inline bool uses_var(const ExprP& e, int which, int depth = 0) {
  switch (e->tag) {
    case Tag::Var:
      return e->index == which + depth;
    default:
      for (size_t i = 0; i < e->kids.size(); ++i)
        if (uses_var(e->kids[i], which, depth + binder_depth(*e, static_cast<int>(i)))) return true;
      return false;
  }
}

// Printing: binders get synthesized names v<depth>; free variables are
// resolved against `names` (innermost last) when provided, else printed %k.
std::string show(const ExprP& e, const std::vector<std::string>& names);

namespace detail {

inline std::string show_var(int ix, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  if (ix < n) return names[n - 1 - ix];
  return "%" + std::to_string(ix - n);
}

}  // namespace detail

inline std::string show(const ExprP& e, const std::vector<std::string>& names) {
  auto bind = [&](const std::string& base) {
    std::string nm = base + std::to_string(names.size());
    auto ns = names;
    ns.push_back(nm);
    return std::make_pair(nm, ns);
  };
  switch (e->tag) {
    case Tag::Var:
      return detail::show_var(e->index, names);
    case Tag::Sym: {
      if (e->kids.empty()) return e->head;
      std::string s = e->head + "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) s += ", ";
        s += show(e->kids[i], names);
      }
      return s + ")";
    }
    case Tag::IdT:
      return "Id(" + show(e->kids[0], names) + ", " + show(e->kids[1], names) + ", " + show(e->kids[2], names) + ")";
    case Tag::Unit:
      return "Unit";
    case Tag::Sigma: {
      auto [nm, ns] = bind("v");
      return "Sigma(" + nm + " : " + show(e->kids[0], names) + ", " + show(e->kids[1], ns) + ")";
    }
    case Tag::Pi: {
      auto [nm, ns] = bind("v");
      return "Pi(" + nm + " : " + show(e->kids[0], names) + ", " + show(e->kids[1], ns) + ")";
    }
    case Tag::Refl:
      return "refl(" + show(e->kids[0], names) + ")";
    case Tag::TT:
      return "tt";
    case Tag::Pair:
      return "pair(" + show(e->kids[0], names) + ", " + show(e->kids[1], names) + ")";
    case Tag::Fst:
      return "fst(" + show(e->kids[0], names) + ")";
    case Tag::Snd:
      return "snd(" + show(e->kids[0], names) + ")";
    case Tag::Lam: {
      auto [nm, ns] = bind("v");
      return "lam(" + nm + ". " + show(e->kids[0], ns) + ")";
    }
    case Tag::App:
      return "app(" + show(e->kids[0], names) + ", " + show(e->kids[1], names) + ")";
    case Tag::Funext:
      return "funext(" + show(e->kids[0], names) + ", " + show(e->kids[1], names) + ", " + show(e->kids[2], names) + ")";
    case Tag::J: {
      const int k = e->jparams;
      std::string s = k == 0 ? "J(" : "J[" + std::to_string(k) + "](";
      auto ns3 = names;
      std::string x1 = "v" + std::to_string(ns3.size());
      ns3.push_back(x1);
      std::string x2 = "v" + std::to_string(ns3.size());
      ns3.push_back(x2);
      std::string q = "v" + std::to_string(ns3.size());
      ns3.push_back(q);
      for (int i = 0; i < k; ++i) {
        s += show(j_delta(*e, i), ns3) + "; ";
        ns3.push_back("v" + std::to_string(ns3.size()));
      }
      s += x1 + "." + x2 + "." + q + ". " + show(j_motive(*e), ns3);
      auto nsd = names;
      nsd.push_back("v" + std::to_string(nsd.size()));
      for (int i = 0; i < k; ++i) nsd.push_back("v" + std::to_string(nsd.size()));
      s += ", " + show(j_base(*e), nsd);
      s += ", " + show(j_lhs(*e), names) + ", " + show(j_rhs(*e), names) + ", " + show(j_path(*e), names);
      for (int i = 0; i < k; ++i) s += ", " + show(j_param(*e, i), names);
      return s + ")";
    }
  }
  return "?";
}

inline std::string show(const ExprP& e) { return show(e, {}); }

// Total size of the expression tree (for enumeration bounds and ordering).
inline int expr_size(const ExprP& e) {
  int s = 1;
  for (auto& k : e->kids) s += expr_size(k);
  return s;
}

}  // namespace ctxcat

#endif  // CTXCAT_EXPR_HPP
