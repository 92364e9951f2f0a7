// Definitional equality and bidirectional typechecking over a signature of
// generator symbols. Generators are neutral: they block reduction and only
// support congruence, except where an oriented equation rewrites them.

#ifndef CTXCAT_KERNEL_HPP
#define CTXCAT_KERNEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctxcat/expr.hpp"

namespace ctxcat {

struct KernelError : std::runtime_error {
  explicit KernelError(const std::string& m) : std::runtime_error(m) {}
};

// Ordered list of (label, type); entry i's type is well-formed over the
// preceding prefix. A length-n telescope models an object of degree n.
struct Telescope {
  std::vector<std::pair<std::string, ExprP>> entries;

  int size() const { return static_cast<int>(entries.size()); }
  bool empty() const { return entries.empty(); }
  void push(std::string name, ExprP ty) { entries.emplace_back(std::move(name), std::move(ty)); }

  Telescope prefix(int n) const {
    Telescope t;
    t.entries.assign(entries.begin(), entries.begin() + n);
    return t;
  }

  // Type of the variable with de Bruijn index ix, shifted to the full context.
  ExprP var_type(int ix) const {
    const int n = size();
    if (ix < 0 || ix >= n) throw KernelError("unbound variable index " + std::to_string(ix));
    return shift(entries[n - 1 - ix].second, ix + 1);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> ns;
    ns.reserve(entries.size());
    for (auto& e : entries) ns.push_back(e.first);
    return ns;
  }

  Telescope extended(std::string name, ExprP ty) const {
    Telescope t = *this;
    t.push(std::move(name), std::move(ty));
    return t;
  }
};

inline bool tele_eq(const Telescope& a, const Telescope& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (!expr_eq(a.entries[i].second, b.entries[i].second)) return false;
  return true;
}

inline std::string show(const Telescope& t) {
  std::string s = "(";
  std::vector<std::string> ns;
  for (int i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += t.entries[i].first + " : " + show(t.entries[i].second, ns);
    ns.push_back(t.entries[i].first);
  }
  return s + ")";
}

// Generator symbol declaration: a parameter telescope plus either a type
// former or a term former with its result type over the parameters.
struct GenDecl {
  std::string name;
  Telescope params;
  bool is_type = true;
  ExprP result;  // term formers only: type over params
};

// Oriented definitional equation: a fully applied generator rewrites to a
// right-hand side over the same parameters. Acyclicity is enforced at
// registration (the rhs may use only strictly earlier symbols).
struct RewriteRule {
  std::string lhs_head;
  ExprP rhs;  // over the parameter telescope of lhs_head
};

class Signature {
 public:
  const GenDecl* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &decls_[it->second];
  }

  const GenDecl& get(const std::string& name) const {
    const GenDecl* d = find(name);
    if (!d) throw KernelError("unknown generator symbol '" + name + "'");
    return *d;
  }

  int position(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : static_cast<int>(it->second);
  }

  void declare(GenDecl d) {
    if (find(d.name)) throw KernelError("duplicate generator symbol '" + d.name + "'");
    index_[d.name] = decls_.size();
    decls_.push_back(std::move(d));
  }

  const RewriteRule* rule_for(const std::string& head) const {
    auto it = rules_.find(head);
    return it == rules_.end() ? nullptr : &it->second;
  }

  // Only orientable equations are accepted: lhs a fully applied generator,
  // rhs over the same parameters mentioning only earlier symbols.
  void add_rule(const std::string& head, ExprP rhs);

  const std::vector<GenDecl>& decls() const { return decls_; }
  bool has_rules() const { return !rules_.empty(); }
  size_t rule_count() const { return rules_.size(); }

 private:
  std::vector<GenDecl> decls_;
  std::map<std::string, size_t> index_;
  std::map<std::string, RewriteRule> rules_;

  friend class Kernel;
};

class Kernel {
 public:
  explicit Kernel(const Signature* sig) : sig_(sig) {}

  const Signature& signature() const { return *sig_; }

  // --- scope and well-formedness ---

  void check_scope(const Telescope& ctx, const ExprP& e) const { scope(ctx.size(), e); }

  void check_type(const Telescope& ctx, const ExprP& T) const;
  void check_tele(const Telescope& ctx, const Telescope& ext) const;

  // --- bidirectional typing ---

  ExprP synth(const Telescope& ctx, const ExprP& e) const;
  void check_term(const Telescope& ctx, const ExprP& e, const ExprP& T) const;

  bool checks(const Telescope& ctx, const ExprP& e, const ExprP& T, std::string* why = nullptr) const {
    try {
      check_term(ctx, e, T);
      return true;
    } catch (const KernelError& err) {
      if (why) *why = err.what();
      return false;
    }
  }

  // --- normalization ---

  ExprP whnf(const ExprP& e) const;
  ExprP nf_type(const Telescope& ctx, const ExprP& T) const;
  ExprP nf_term(const Telescope& ctx, const ExprP& e, const ExprP& T) const;
  Telescope nf_tele(const Telescope& ctx, const Telescope& ext) const;

  bool conv_type(const Telescope& ctx, const ExprP& A, const ExprP& B) const {
    return expr_eq(nf_type(ctx, A), nf_type(ctx, B));
  }
  bool conv_term(const Telescope& ctx, const ExprP& T, const ExprP& a, const ExprP& b) const {
    return expr_eq(nf_term(ctx, a, T), nf_term(ctx, b, T));
  }

  // Normalize e over ctx: types normalize structurally, synthesizable terms
  // at their synthesized type; other well-scoped expressions head-normalize.
  ExprP normalize(const Telescope& ctx, const ExprP& e) const;

 private:
  const Signature* sig_;

  static void scope(int n, const ExprP& e, int depth = 0) {
    if (e->tag == Tag::Var) {
      if (e->index >= n + depth)
        throw KernelError("ill-scoped: variable index " + std::to_string(e->index) + " exceeds context depth " +
                          std::to_string(n + depth));
      return;
    }
    for (size_t i = 0; i < e->kids.size(); ++i)
      scope(n, e->kids[i], depth + binder_depth(*e, static_cast<int>(i)));
  }

  // Typecheck a spine against a parameter telescope; returns the spine's
  // entry substitutions (the spine itself).
  void check_spine(const Telescope& ctx, const std::string& head, const std::vector<ExprP>& spine,
                   const Telescope& params) const;

  std::pair<ExprP, ExprP> synth_neutral_nf(const Telescope& ctx, const ExprP& e) const;

  ExprP instantiate_params(const Telescope& params, const ExprP& body, const std::vector<ExprP>& spine) const {
    return apply_comps(body, spine);
  }
};

// --- Signature ---

namespace detail {
inline void collect_syms(const ExprP& e, std::vector<std::string>& out) {
  if (e->tag == Tag::Sym) out.push_back(e->head);
  for (auto& k : e->kids) collect_syms(k, out);
}
}  // namespace detail

inline void Signature::add_rule(const std::string& head, ExprP rhs) {
  const GenDecl* d = find(head);
  if (!d) throw KernelError("equation over unknown symbol '" + head + "'");
  if (rules_.count(head))
    throw KernelError("equation not orientable: symbol '" + head + "' already has a rewrite rule");
  std::vector<std::string> used;
  detail::collect_syms(rhs, used);
  const int pos = position(head);
  for (auto& s : used) {
    const int sp = position(s);
    if (sp < 0) throw KernelError("equation rhs mentions unknown symbol '" + s + "'");
    if (sp >= pos)
      throw KernelError("equation not orientable: rhs of '" + head + "' mentions '" + s +
                        "', which is not declared strictly earlier");
  }
  if (free_var_bound(rhs) > d->params.size())
    throw KernelError("equation rhs of '" + head + "' is not over the symbol's parameters");
  rules_[head] = RewriteRule{head, std::move(rhs)};
}

// --- Kernel: normalization ---

inline ExprP Kernel::whnf(const ExprP& e0) const {
  ExprP e = e0;
  for (;;) {
    switch (e->tag) {
      case Tag::App: {
        ExprP f = whnf(e->kids[0]);
        if (f->tag == Tag::Lam) {
          e = inst1(f->kids[0], e->kids[1]);
          continue;
        }
        if (f.get() == e->kids[0].get()) return e;
        return app(f, e->kids[1]);
      }
      case Tag::Fst: {
        ExprP p = whnf(e->kids[0]);
        if (p->tag == Tag::Pair) {
          e = p->kids[0];
          continue;
        }
        if (p.get() == e->kids[0].get()) return e;
        return fst(p);
      }
      case Tag::Snd: {
        ExprP p = whnf(e->kids[0]);
        if (p->tag == Tag::Pair) {
          e = p->kids[1];
          continue;
        }
        if (p.get() == e->kids[0].get()) return e;
        return snd(p);
      }
      case Tag::J: {
        ExprP p = whnf(j_path(*e));
        if (p->tag == Tag::Refl) {
          std::vector<ExprP> vals;
          vals.push_back(p->kids[0]);
          for (int i = 0; i < e->jparams; ++i) vals.push_back(j_param(*e, i));
          e = inst_at(j_base(*e), 0, vals);
          continue;
        }
        if (p.get() == j_path(*e).get()) return e;
        auto r = std::make_shared<Expr>(*e);
        const_cast<Expr&>(*r).kids[e->jparams + 4] = p;
        return r;
      }
      case Tag::Sym: {
        const RewriteRule* rule = sig_->rule_for(e->head);
        if (rule) {
          e = apply_comps(rule->rhs, e->kids);
          continue;
        }
        return e;
      }
      default:
        return e;
    }
  }
}

inline ExprP Kernel::nf_type(const Telescope& ctx, const ExprP& T0) const {
  ExprP T = whnf(T0);
  switch (T->tag) {
    case Tag::Unit:
      return T;
    case Tag::IdT: {
      ExprP A = nf_type(ctx, T->kids[0]);
      return id_ty(A, nf_term(ctx, T->kids[1], A), nf_term(ctx, T->kids[2], A));
    }
    case Tag::Sigma:
    case Tag::Pi: {
      ExprP A = nf_type(ctx, T->kids[0]);
      ExprP B = nf_type(ctx.extended("_", A), T->kids[1]);
      return mk(T->tag, {A, B});
    }
    case Tag::Sym: {
      const GenDecl& d = sig_->get(T->head);
      if (!d.is_type) throw KernelError("term-former '" + T->head + "' used as a type");
      std::vector<ExprP> args;
      args.reserve(T->kids.size());
      for (size_t i = 0; i < T->kids.size(); ++i) {
        ExprP pt = apply_comps(d.params.entries[i].second, {T->kids.begin(), T->kids.begin() + i});
        args.push_back(nf_term(ctx, T->kids[i], pt));
      }
      return sym(T->head, std::move(args));
    }
    default:
      throw KernelError("not a type: " + show(T, ctx.names()));
  }
}

inline ExprP Kernel::nf_term(const Telescope& ctx, const ExprP& e, const ExprP& T0) const {
  ExprP T = whnf(T0);
  switch (T->tag) {
    case Tag::Unit:
      return tt();
    case Tag::Pi: {
      const ExprP& A = T->kids[0];
      const ExprP& B = T->kids[1];
      Telescope ctx2 = ctx.extended("_", A);
      return lam(nf_term(ctx2, app(shift(e, 1), var(0)), B));
    }
    case Tag::Sigma: {
      const ExprP& A = T->kids[0];
      const ExprP& B = T->kids[1];
      ExprP f = nf_term(ctx, fst(e), A);
      ExprP s = nf_term(ctx, snd(e), inst1(B, fst(e)));
      return pair(f, s);
    }
    default: {
      ExprP h = whnf(e);
      if (h->tag == Tag::Refl) {
        if (T->tag != Tag::IdT) throw KernelError("refl against non-Id type");
        return refl(nf_term(ctx, h->kids[0], T->kids[0]));
      }
      if (h->tag == Tag::TT) return h;
      if (h->tag == Tag::Pair || h->tag == Tag::Lam)
        throw KernelError("canonical term against mismatched type " + show(T, ctx.names()));
      return synth_neutral_nf(ctx, h).first;
    }
  }
}

// Normalizes a head-normal neutral and synthesizes its (whnf) type.
inline std::pair<ExprP, ExprP> Kernel::synth_neutral_nf(const Telescope& ctx, const ExprP& e) const {
  switch (e->tag) {
    case Tag::Var:
      return {e, whnf(ctx.var_type(e->index))};
    case Tag::Sym: {
      const GenDecl& d = sig_->get(e->head);
      if (d.is_type) throw KernelError("type-former '" + e->head + "' used as a term");
      if (static_cast<int>(e->kids.size()) != d.params.size())
        throw KernelError("arity mismatch for '" + e->head + "'");
      std::vector<ExprP> args;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        ExprP pt = apply_comps(d.params.entries[i].second, {e->kids.begin(), e->kids.begin() + i});
        args.push_back(nf_term(ctx, e->kids[i], pt));
      }
      ExprP ty = apply_comps(d.result, e->kids);
      return {sym(e->head, std::move(args)), whnf(ty)};
    }
    case Tag::App: {
      auto [f, Tf] = synth_neutral_nf(ctx, e->kids[0]);
      if (Tf->tag != Tag::Pi) throw KernelError("application head is not a function");
      ExprP a = nf_term(ctx, e->kids[1], Tf->kids[0]);
      return {app(f, a), whnf(inst1(Tf->kids[1], a))};
    }
    case Tag::Fst: {
      auto [p, Tp] = synth_neutral_nf(ctx, e->kids[0]);
      if (Tp->tag != Tag::Sigma) throw KernelError("fst of non-pair type");
      return {fst(p), whnf(Tp->kids[0])};
    }
    case Tag::Snd: {
      auto [p, Tp] = synth_neutral_nf(ctx, e->kids[0]);
      if (Tp->tag != Tag::Sigma) throw KernelError("snd of non-pair type");
      return {snd(p), whnf(inst1(Tp->kids[1], fst(p)))};
    }
    case Tag::Funext: {
      auto [f, Tf] = synth_neutral_nf(ctx, whnf(e->kids[0]));
      if (Tf->tag != Tag::Pi) throw KernelError("funext over non-function");
      ExprP g = nf_term(ctx, e->kids[1], Tf);
      const ExprP& A = Tf->kids[0];
      const ExprP& B = Tf->kids[1];
      ExprP hty = pi_ty(A, id_ty(B, app(shift(e->kids[0], 1), var(0)), app(shift(e->kids[1], 1), var(0))));
      ExprP h = nf_term(ctx, e->kids[2], hty);
      return {funext(f, g, h), whnf(id_ty(Tf, f, g))};
    }
    case Tag::J: {
      // p is neutral here (whnf'd by the caller via nf_term dispatch).
      const int k = e->jparams;
      ExprP Tp = synth(ctx, j_path(*e));
      ExprP Tpw = whnf(Tp);
      if (Tpw->tag != Tag::IdT) throw KernelError("J over a non-path");
      ExprP A = nf_type(ctx, Tpw->kids[0]);
      ExprP a = nf_term(ctx, j_lhs(*e), A);
      ExprP b = nf_term(ctx, j_rhs(*e), A);
      auto [p, TpN] = synth_neutral_nf(ctx, whnf(j_path(*e)));
      (void)TpN;
      Telescope ctx3 = ctx.extended("_", A).extended("_", shift(A, 1)).extended("_", id_ty(shift(A, 2), var(1), var(0)));
      std::vector<ExprP> deltas;
      Telescope ctxD = ctx3;
      for (int i = 0; i < k; ++i) {
        ExprP Di = nf_type(ctxD, j_delta(*e, i));
        deltas.push_back(Di);
        ctxD = ctxD.extended("_", Di);
      }
      ExprP C = nf_type(ctxD, j_motive(*e));
      // base case context: ctx.(x:A).D[x,x,refl x]
      Telescope ctxd = ctx.extended("_", A);
      std::vector<ExprP> diag = {var(0), var(0), refl(var(0))};
      auto diag_inst = [&](const ExprP& body, int off) { return inst_at(shift(body, 1, 3 + off), off, diag); };
      std::vector<ExprP> dd;
      for (int i = 0; i < k; ++i) {
        ExprP Dd = diag_inst(deltas[static_cast<size_t>(i)], i);
        dd.push_back(Dd);
        ctxd = ctxd.extended("_", Dd);
      }
      ExprP Cd = diag_inst(C, k);
      ExprP d = nf_term(ctxd, j_base(*e), Cd);
      std::vector<ExprP> params;
      std::vector<ExprP> inst = {a, b, p};
      for (int i = 0; i < k; ++i) {
        ExprP Dty = inst_at(deltas[static_cast<size_t>(i)], 0, inst);
        ExprP s = nf_term(ctx, j_param(*e, i), Dty);
        params.push_back(s);
        inst.push_back(s);
      }
      ExprP ty = inst_at(C, 0, inst);
      return {j_elim_frob(deltas, C, d, a, b, p, params), whnf(ty)};
    }
    default:
      throw KernelError("not a neutral term");
  }
}

inline Telescope Kernel::nf_tele(const Telescope& ctx, const Telescope& ext) const {
  Telescope out;
  Telescope cur = ctx;
  for (auto& [name, ty] : ext.entries) {
    ExprP n = nf_type(cur, ty);
    out.push(name, n);
    cur = cur.extended(name, n);
  }
  return out;
}

// --- Kernel: typing ---

inline void Kernel::check_type(const Telescope& ctx, const ExprP& T0) const {
  ExprP T = whnf(T0);
  switch (T->tag) {
    case Tag::Unit:
      return;
    case Tag::IdT: {
      check_type(ctx, T->kids[0]);
      check_term(ctx, T->kids[1], T->kids[0]);
      check_term(ctx, T->kids[2], T->kids[0]);
      return;
    }
    case Tag::Sigma:
    case Tag::Pi: {
      check_type(ctx, T->kids[0]);
      check_type(ctx.extended("_", T->kids[0]), T->kids[1]);
      return;
    }
    case Tag::Sym: {
      const GenDecl& d = sig_->get(T->head);
      if (!d.is_type)
        throw KernelError("term-former '" + T->head + "' used as a type");
      check_spine(ctx, T->head, T->kids, d.params);
      return;
    }
    default:
      throw KernelError("not a type: " + show(T, ctx.names()));
  }
}

inline void Kernel::check_tele(const Telescope& ctx, const Telescope& ext) const {
  Telescope cur = ctx;
  for (auto& [name, ty] : ext.entries) {
    check_type(cur, ty);
    cur = cur.extended(name, ty);
  }
}

inline void Kernel::check_spine(const Telescope& ctx, const std::string& head, const std::vector<ExprP>& spine,
                                const Telescope& params) const {
  if (static_cast<int>(spine.size()) != params.size())
    throw KernelError("arity mismatch: '" + head + "' expects " + std::to_string(params.size()) + " arguments, got " +
                      std::to_string(spine.size()));
  for (size_t i = 0; i < spine.size(); ++i) {
    ExprP pt = apply_comps(params.entries[i].second, {spine.begin(), spine.begin() + i});
    check_term(ctx, spine[i], pt);
  }
}

inline ExprP Kernel::synth(const Telescope& ctx, const ExprP& e0) const {
  // Head-reduce first so that substitution-created redexes synthesize.
  ExprP e = whnf(e0);
  switch (e->tag) {
    case Tag::Var:
      return ctx.var_type(e->index);
    case Tag::Sym: {
      const GenDecl& d = sig_->get(e->head);
      if (d.is_type) throw KernelError("type-former '" + e->head + "' used as a term");
      check_spine(ctx, e->head, e->kids, d.params);
      return apply_comps(d.result, e->kids);
    }
    case Tag::TT:
      return unit_ty();
    case Tag::Refl: {
      ExprP A = synth(ctx, e->kids[0]);
      return id_ty(A, e->kids[0], e->kids[0]);
    }
    case Tag::App: {
      ExprP Tf = whnf(synth(ctx, e->kids[0]));
      if (Tf->tag != Tag::Pi)
        throw KernelError("application of a non-function: " + show(e->kids[0], ctx.names()));
      check_term(ctx, e->kids[1], Tf->kids[0]);
      return inst1(Tf->kids[1], e->kids[1]);
    }
    case Tag::Fst: {
      ExprP Tp = whnf(synth(ctx, e->kids[0]));
      if (Tp->tag != Tag::Sigma) throw KernelError("fst of a non-pair");
      return Tp->kids[0];
    }
    case Tag::Snd: {
      ExprP Tp = whnf(synth(ctx, e->kids[0]));
      if (Tp->tag != Tag::Sigma) throw KernelError("snd of a non-pair");
      return inst1(Tp->kids[1], fst(e->kids[0]));
    }
    case Tag::Funext: {
      ExprP Tf = whnf(synth(ctx, e->kids[0]));
      if (Tf->tag != Tag::Pi) throw KernelError("funext over a non-function");
      check_term(ctx, e->kids[1], Tf);
      const ExprP& A = Tf->kids[0];
      const ExprP& B = Tf->kids[1];
      ExprP hty = pi_ty(A, id_ty(B, app(shift(e->kids[0], 1), var(0)), app(shift(e->kids[1], 1), var(0))));
      check_term(ctx, e->kids[2], hty);
      return id_ty(Tf, e->kids[0], e->kids[1]);
    }
    case Tag::J: {
      const int k = e->jparams;
      ExprP A;
      ExprP pw = whnf(j_path(*e));
      if (pw->tag == Tag::Refl) {
        A = synth(ctx, pw->kids[0]);
      } else {
        ExprP Tp = whnf(synth(ctx, j_path(*e)));
        if (Tp->tag != Tag::IdT) throw KernelError("J over a non-path");
        A = Tp->kids[0];
      }
      check_term(ctx, j_lhs(*e), A);
      check_term(ctx, j_rhs(*e), A);
      check_term(ctx, j_path(*e), id_ty(A, j_lhs(*e), j_rhs(*e)));
      Telescope ctx3 =
          ctx.extended("x1", A).extended("x2", shift(A, 1)).extended("q", id_ty(shift(A, 2), var(1), var(0)));
      Telescope ctxD = ctx3;
      for (int i = 0; i < k; ++i) {
        check_type(ctxD, j_delta(*e, i));
        ctxD = ctxD.extended("_", j_delta(*e, i));
      }
      check_type(ctxD, j_motive(*e));
      // Base-case contexts gain the diagonal binder x below the motive's
      // bound triple, so ambient references shift up by one first.
      std::vector<ExprP> diag = {var(0), var(0), refl(var(0))};
      auto diag_inst = [&](const ExprP& body, int off) { return inst_at(shift(body, 1, 3 + off), off, diag); };
      Telescope ctxd = ctx.extended("x", A);
      for (int i = 0; i < k; ++i) ctxd = ctxd.extended("_", diag_inst(j_delta(*e, i), i));
      check_term(ctxd, j_base(*e), diag_inst(j_motive(*e), k));
      std::vector<ExprP> inst = {j_lhs(*e), j_rhs(*e), j_path(*e)};
      for (int i = 0; i < k; ++i) {
        check_term(ctx, j_param(*e, i), inst_at(j_delta(*e, i), 0, inst));
        inst.push_back(j_param(*e, i));
      }
      return inst_at(j_motive(*e), 0, inst);
    }
    case Tag::Lam:
      throw KernelError("cannot synthesize the type of a lambda");
    case Tag::Pair:
      throw KernelError("cannot synthesize the type of a pair");
    default:
      throw KernelError("expression is a type, not a term: " + show(e, ctx.names()));
  }
}

inline void Kernel::check_term(const Telescope& ctx, const ExprP& e, const ExprP& T) const {
  ExprP Tw = whnf(T);
  switch (e->tag) {
    case Tag::Lam: {
      if (Tw->tag != Tag::Pi)
        throw KernelError("lambda against non-Pi type " + show(Tw, ctx.names()));
      check_term(ctx.extended("_", Tw->kids[0]), e->kids[0], Tw->kids[1]);
      return;
    }
    case Tag::Pair: {
      if (Tw->tag != Tag::Sigma)
        throw KernelError("pair against non-Sigma type " + show(Tw, ctx.names()));
      check_term(ctx, e->kids[0], Tw->kids[0]);
      check_term(ctx, e->kids[1], inst1(Tw->kids[1], e->kids[0]));
      return;
    }
    case Tag::Refl: {
      if (Tw->tag != Tag::IdT)
        throw KernelError("refl against non-Id type " + show(Tw, ctx.names()));
      const ExprP& A = Tw->kids[0];
      check_term(ctx, e->kids[0], A);
      if (!conv_term(ctx, A, e->kids[0], Tw->kids[1]) || !conv_term(ctx, A, e->kids[0], Tw->kids[2]))
        throw KernelError("refl(" + show(e->kids[0], ctx.names()) + ") does not inhabit " + show(Tw, ctx.names()));
      return;
    }
    case Tag::TT: {
      if (Tw->tag != Tag::Unit) throw KernelError("tt against non-Unit type");
      return;
    }
    default: {
      // Switch to synthesis; reduce first if the head is a redex so that
      // substitution-created redexes check cleanly.
      ExprP h = whnf(e);
      if (h->tag == Tag::Lam || h->tag == Tag::Pair || h->tag == Tag::Refl || h->tag == Tag::TT) {
        check_term(ctx, h, Tw);
        return;
      }
      ExprP S = synth(ctx, h);
      if (!conv_type(ctx, S, Tw))
        throw KernelError("type mismatch: term " + show(e, ctx.names()) + " has type " +
                          show(nf_type(ctx, S), ctx.names()) + ", expected " + show(nf_type(ctx, Tw), ctx.names()));
      return;
    }
  }
}

inline ExprP Kernel::normalize(const Telescope& ctx, const ExprP& e) const {
  check_scope(ctx, e);
  try {
    check_type(ctx, e);
    return nf_type(ctx, e);
  } catch (const KernelError&) {
  }
  ExprP T = synth(ctx, e);
  return nf_term(ctx, e, T);
}

}  // namespace ctxcat

#endif  // CTXCAT_KERNEL_HPP
