// The syntactic model over a signature: objects are telescopes, maps are
// substitutions modulo definitional equality, types and terms are kernel
// expressions. With no opaque base this is the canonical graded (contextual)
// instance; with one, it realizes the free CwA on an object that is not an
// extension of the terminal.

#ifndef CTXCAT_SYNTACTIC_MODEL_HPP
#define CTXCAT_SYNTACTIC_MODEL_HPP

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctxcat/model.hpp"
#include "ctxcat/subst.hpp"

namespace ctxcat {

// Objects: extensions of the terminal (based = false) or of the opaque base
// object (based = true). The telescope holds only the extension part.
struct TeleObj final : ObjData {
  bool based = false;
  Telescope tele;
  TeleObj(bool b, Telescope t) : based(b), tele(std::move(t)) {}
};

struct SubstMap final : MapData {
  bool src_based = false;
  bool tgt_based = false;
  Subst sub;
  SubstMap(bool sb, bool tb, Subst s) : src_based(sb), tgt_based(tb), sub(std::move(s)) {}
};

struct ExprType final : TypeData {
  bool based = false;
  Telescope ctx;
  ExprP ty;
  ExprType(bool b, Telescope c, ExprP t) : based(b), ctx(std::move(c)), ty(std::move(t)) {}
};

struct ExprTerm final : TermData {
  bool based = false;
  Telescope ctx;
  ExprP ty;
  ExprP tm;
  ExprTerm(bool b, Telescope c, ExprP t, ExprP e) : based(b), ctx(std::move(c)), ty(std::move(t)), tm(std::move(e)) {}
};

// Per-symbol base requirement lives beside the signature.
struct BaseInfo {
  bool has_base = false;
  std::string base_name = "G";
  std::set<std::string> based_symbols;  // symbols only available over the base
};

class SyntacticModel final : public Model {
 public:
  SyntacticModel(std::shared_ptr<const Signature> sig, Flavour fl, std::string name = "syntactic",
                 BaseInfo base = {})
      : sig_(std::move(sig)), kernel_(sig_.get()), flavour_(fl), name_(std::move(name)), base_(std::move(base)) {}

  const Kernel& kernel() const { return kernel_; }
  const Signature& signature() const { return *sig_; }
  std::shared_ptr<const Signature> signature_ptr() const { return sig_; }
  const BaseInfo& base_info() const { return base_; }

  std::string name() const override { return name_; }
  Flavour flavour() const override { return flavour_; }
  bool graded() const override { return !base_.has_base; }

  // --- wrappers ---
  static const TeleObj& objd(const ObjP& G) { return cast_data<TeleObj>(G, "telescope object"); }
  static const Telescope& tele(const ObjP& G) { return objd(G).tele; }
  static const SubstMap& mapd(const MapP& f) { return cast_data<SubstMap>(f, "substitution map"); }
  static const Subst& subst(const MapP& f) { return mapd(f).sub; }
  static const ExprType& type(const TypeP& A) { return cast_data<ExprType>(A, "expression type"); }
  static const ExprTerm& term(const TermP& a) { return cast_data<ExprTerm>(a, "expression term"); }

  ObjP obj(Telescope t, bool based = false) const { return std::make_shared<TeleObj>(based, std::move(t)); }
  MapP map(Subst s, bool sb = false, bool tb = false) const {
    return std::make_shared<SubstMap>(sb, tb, std::move(s));
  }
  TypeP ty(Telescope ctx, ExprP t, bool based = false) const {
    return std::make_shared<ExprType>(based, std::move(ctx), std::move(t));
  }
  TermP tm(Telescope ctx, ExprP t, ExprP e, bool based = false) const {
    return std::make_shared<ExprTerm>(based, std::move(ctx), std::move(t), std::move(e));
  }

  ObjP base_obj() const {
    if (!base_.has_base) throw ModelError(name_ + ": no opaque base object");
    return obj(Telescope{}, true);
  }

  int degree(const ObjP& G) const override {
    if (objd(G).based) throw ModelError(name_ + ": based objects are ungraded");
    return tele(G).size();
  }

  std::vector<TypeP> tele_of(const ObjP& G) const override {
    const auto& o = objd(G);
    if (o.based) throw ModelError(name_ + ": no telescope view of based objects");
    std::vector<TypeP> out;
    for (int i = 0; i < o.tele.size(); ++i) out.push_back(ty(o.tele.prefix(i), o.tele.entries[i].second));
    return out;
  }

  ObjP terminal() const override { return obj(Telescope{}); }

  ObjP ext(const ObjP& G, const TypeP& A) const override {
    const auto& o = objd(G);
    return obj(o.tele.extended(fresh_name(o.tele), type(A).ty), o.based);
  }

  ObjP ft_obj(const ObjP& G) const override {
    const auto& o = objd(G);
    if (o.tele.empty()) throw ModelError("ft of a length-0 object");
    return obj(o.tele.prefix(o.tele.size() - 1), o.based);
  }

  MapP proj(const ObjP& G, const TypeP& A) const override {
    const auto& o = objd(G);
    Telescope e = o.tele.extended(fresh_name(o.tele), type(A).ty);
    return map(proj_subst(e, e.size() - 1), o.based, o.based);
  }

  TypeP reindex(const MapP& f, const TypeP& A) const override {
    const auto& m = mapd(f);
    return ty(m.sub.src, apply_subst(m.sub, type(A).ty), m.src_based);
  }

  MapP connecting(const MapP& f, const TypeP& A) const override {
    const auto& m = mapd(f);
    return map(connecting_subst(m.sub, fresh_name(m.sub.src), type(A).ty), m.src_based, m.tgt_based);
  }

  MapP id_map(const ObjP& G) const override {
    const auto& o = objd(G);
    return map(id_subst(o.tele), o.based, o.based);
  }

  MapP comp(const MapP& g, const MapP& f) const override {
    const auto& mg = mapd(g);
    const auto& mf = mapd(f);
    if (mg.src_based && !mf.tgt_based) throw ModelError("composition through mismatched bases");
    return map(compose_subst(mg.sub, mf.sub), mf.src_based, mg.tgt_based);
  }

  ObjP dom(const MapP& f) const override { return obj(subst(f).src, mapd(f).src_based); }
  ObjP cod(const MapP& f) const override { return obj(subst(f).tgt, mapd(f).tgt_based); }

  MapP bang(const ObjP& G) const override {
    const auto& o = objd(G);
    return map(Subst{o.tele, Telescope{}, {}}, o.based, false);
  }

  // Projection composite G.ext -> G for based bookkeeping.
  MapP proj_to_base(const ObjP& G) const {
    const auto& o = objd(G);
    if (!o.based) return bang(G);
    return map(Subst{o.tele, Telescope{}, {}}, true, true);
  }

  MapP ext_map(const MapP& f, const TypeP& A, const TermP& a) const override {
    const auto& m = mapd(f);
    return map(ext_subst(m.sub, fresh_name(m.sub.tgt), type(A).ty, term(a).tm), m.src_based, m.tgt_based);
  }

  TermP var_term(const ObjP& G, const TypeP& A) const override {
    const auto& o = objd(G);
    Telescope e = o.tele.extended(fresh_name(o.tele), type(A).ty);
    return tm(e, shift(type(A).ty, 1), var(0), o.based);
  }

  TermP subst_term(const MapP& f, const TermP& a) const override {
    const auto& m = mapd(f);
    const auto& t = term(a);
    return tm(m.sub.src, apply_subst(m.sub, t.ty), apply_subst(m.sub, t.tm), m.src_based);
  }

  TermP last_term(const MapP& v, const ObjP& G, const TypeP& A) const override {
    const auto& m = mapd(v);
    if (m.sub.comps.empty()) throw ModelError("last_term of a map into a length-0 object");
    std::vector<ExprP> prefix(m.sub.comps.begin(), m.sub.comps.end() - 1);
    return tm(m.sub.src, apply_comps(type(A).ty, prefix), m.sub.comps.back(), m.src_based);
  }

  // --- equality ---
  bool obj_eq(const ObjP& a, const ObjP& b) const override {
    const auto& x = objd(a);
    const auto& y = objd(b);
    return x.based == y.based && tele_eq(kernel_.nf_tele(Telescope{}, x.tele), kernel_.nf_tele(Telescope{}, y.tele));
  }
  bool map_eq(const MapP& f, const MapP& g) const override {
    const auto& x = mapd(f);
    const auto& y = mapd(g);
    return x.src_based == y.src_based && x.tgt_based == y.tgt_based && subst_eq(kernel_, x.sub, y.sub);
  }
  bool type_eq(const TypeP& A, const TypeP& B) const override {
    const auto& a = type(A);
    const auto& b = type(B);
    return a.based == b.based && expr_eq(kernel_.nf_type(a.ctx, a.ty), kernel_.nf_type(b.ctx, b.ty));
  }
  bool term_eq(const TermP& a, const TermP& b) const override {
    const auto& x = term(a);
    const auto& y = term(b);
    return x.based == y.based && expr_eq(kernel_.nf_term(x.ctx, x.tm, x.ty), kernel_.nf_term(y.ctx, y.tm, y.ty));
  }

  // --- logical structure ---
  TypeP id_type(const ObjP& G, const TypeP& A, const TermP& a, const TermP& b) const override {
    return ty(tele(G), id_ty(type(A).ty, term(a).tm, term(b).tm), objd(G).based);
  }
  TermP refl_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    const auto& t = term(a);
    return tm(tele(G), id_ty(type(A).ty, t.tm, t.tm), refl(t.tm), objd(G).based);
  }

  TermP j_term(const ObjP& G, const JArgs& args) const override {
    std::vector<ExprP> deltas, params;
    for (auto& d : args.deltas) deltas.push_back(type(d).ty);
    for (auto& s : args.params) params.push_back(term(s).tm);
    ExprP e = j_elim_frob(deltas, type(args.motive).ty, term(args.base).tm, term(args.lhs).tm, term(args.rhs).tm,
                          term(args.path).tm, params);
    std::vector<ExprP> inst = {term(args.lhs).tm, term(args.rhs).tm, term(args.path).tm};
    for (auto& s : params) inst.push_back(s);
    return tm(tele(G), inst_at(type(args.motive).ty, 0, inst), e, objd(G).based);
  }

  TypeP unit_type(const ObjP& G) const override { return ty(tele(G), unit_ty(), objd(G).based); }
  TermP tt_term(const ObjP& G) const override { return tm(tele(G), unit_ty(), tt(), objd(G).based); }

  TypeP sigma_type(const ObjP& G, const TypeP& A, const TypeP& B) const override {
    return ty(tele(G), sigma_ty(type(A).ty, type(B).ty), objd(G).based);
  }
  TermP pair_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& a, const TermP& b) const override {
    return tm(tele(G), sigma_ty(type(A).ty, type(B).ty), pair(term(a).tm, term(b).tm), objd(G).based);
  }
  TermP fst_term(const ObjP& G, const TypeP& A, const TypeP&, const TermP& p) const override {
    return tm(tele(G), type(A).ty, fst(term(p).tm), objd(G).based);
  }
  TermP snd_term(const ObjP& G, const TypeP&, const TypeP& B, const TermP& p) const override {
    return tm(tele(G), inst1(type(B).ty, fst(term(p).tm)), snd(term(p).tm), objd(G).based);
  }

  TypeP pi_type(const ObjP& G, const TypeP& A, const TypeP& B) const override {
    require_pi();
    return ty(tele(G), pi_ty(type(A).ty, type(B).ty), objd(G).based);
  }
  TermP lam_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& body) const override {
    require_pi();
    return tm(tele(G), pi_ty(type(A).ty, type(B).ty), lam(term(body).tm), objd(G).based);
  }
  TermP app_term(const ObjP& G, const TypeP&, const TypeP& B, const TermP& f, const TermP& a) const override {
    require_pi();
    return tm(tele(G), inst1(type(B).ty, term(a).tm), app(term(f).tm, term(a).tm), objd(G).based);
  }
  TermP funext_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& g,
                    const TermP& h) const override {
    require_pi();
    ExprP pt = pi_ty(type(A).ty, type(B).ty);
    return tm(tele(G), id_ty(pt, term(f).tm, term(g).tm), funext(term(f).tm, term(g).tm, term(h).tm), objd(G).based);
  }

  // --- validation ---
  void validate_obj(const ObjP& G) const override {
    const auto& o = objd(G);
    if (o.based && !base_.has_base) throw ModelError(name_ + ": based object in a model without base");
    kernel_.check_tele(Telescope{}, o.tele);
    for (auto& [n, t] : o.tele.entries) check_base_usage(t, o.based);
  }
  void validate_type(const ObjP& G, const TypeP& A) const override {
    const auto& o = objd(G);
    const auto& a = type(A);
    if (a.based != o.based || a.ctx.size() != o.tele.size()) throw ModelError("type context does not match object");
    kernel_.check_type(o.tele, a.ty);
    check_base_usage(a.ty, o.based);
  }
  void validate_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    kernel_.check_term(tele(G), term(a).tm, type(A).ty);
    check_base_usage(term(a).tm, objd(G).based);
  }
  void validate_map(const MapP& f) const override {
    const auto& m = mapd(f);
    if (m.tgt_based && !m.src_based) throw ModelError("map into a based object from an unbased one");
    check_subst(kernel_, m.sub);
    for (auto& c : m.sub.comps) check_base_usage(c, m.src_based);
  }

  // --- enumeration ---
  std::vector<ObjP> enum_objects(const Budget& b) const override {
    std::vector<ObjP> out;
    auto grow = [&](bool based) {
      std::vector<Telescope> acc{Telescope{}};
      size_t lo = 0;
      out.push_back(obj(Telescope{}, based));
      for (int d = 0; d < b.degree; ++d) {
        size_t hi = acc.size();
        for (size_t i = lo; i < hi && out.size() < static_cast<size_t>(b.objects_cap); ++i) {
          for (auto& T : enum_type_exprs(acc[i], b, based)) {
            if (out.size() >= static_cast<size_t>(b.objects_cap)) break;
            Telescope t2 = acc[i].extended(fresh_name(acc[i]), T);
            out.push_back(obj(t2, based));
            acc.push_back(std::move(t2));
          }
        }
        lo = hi;
      }
    };
    grow(false);
    if (base_.has_base) grow(true);
    return out;
  }

  std::vector<TypeP> enum_types(const ObjP& G, const Budget& b) const override {
    const auto& o = objd(G);
    std::vector<TypeP> out;
    for (auto& T : enum_type_exprs(o.tele, b, o.based)) out.push_back(ty(o.tele, T, o.based));
    return out;
  }

  std::vector<TermP> enum_terms(const ObjP& G, const TypeP& A, const Budget& b) const override {
    const auto& o = objd(G);
    std::vector<TermP> out;
    for (auto& e : enum_term_exprs(o.tele, type(A).ty, b, o.based)) out.push_back(tm(o.tele, type(A).ty, e, o.based));
    return out;
  }

  std::vector<MapP> enum_maps(const ObjP& X, const ObjP& Y, const Budget& b) const override {
    const auto& xo = objd(X);
    const auto& yo = objd(Y);
    if (yo.based && !xo.based) return {};
    std::vector<std::vector<ExprP>> tuples{{}};
    for (int i = 0; i < yo.tele.size(); ++i) {
      std::vector<std::vector<ExprP>> next;
      for (auto& tu : tuples) {
        ExprP T = apply_comps(yo.tele.entries[i].second, tu);
        for (auto& e : enum_term_exprs(xo.tele, T, b, xo.based)) {
          auto t2 = tu;
          t2.push_back(e);
          next.push_back(std::move(t2));
          if (next.size() >= static_cast<size_t>(b.maps_per_pair)) break;
        }
        if (next.size() >= static_cast<size_t>(b.maps_per_pair)) break;
      }
      tuples = std::move(next);
    }
    std::vector<MapP> out;
    for (auto& tu : tuples) out.push_back(map(Subst{xo.tele, yo.tele, tu}, xo.based, yo.based));
    return out;
  }

  // --- display ---
  std::string show_obj(const ObjP& G) const override {
    const auto& o = objd(G);
    return (o.based ? base_.base_name + "." : std::string{}) + show(o.tele);
  }
  std::string show_map(const MapP& f) const override { return show(subst(f)); }
  std::string show_type(const ObjP& G, const TypeP& A) const override { return show(type(A).ty, tele(G).names()); }
  std::string show_term(const ObjP& G, const TypeP&, const TermP& a) const override {
    return show(term(a).tm, tele(G).names());
  }

 private:
  std::shared_ptr<const Signature> sig_;
  Kernel kernel_;
  Flavour flavour_;
  std::string name_;
  BaseInfo base_;

  void require_pi() const {
    if (flavour_ != Flavour::Id1SigmaPiExt) throw ModelError(name_ + ": no Pi structure in this flavour");
  }

  void check_base_usage(const ExprP& e, bool ctx_based) const {
    if (ctx_based || base_.based_symbols.empty()) return;
    std::vector<std::string> syms;
    detail::collect_syms(e, syms);
    for (auto& s : syms)
      if (base_.based_symbols.count(s))
        throw ModelError("symbol '" + s + "' is only available over the base object");
  }

  static std::string fresh_name(const Telescope& t) { return "x" + std::to_string(t.size()); }

  bool symbol_allowed(const std::string& s, bool based) const {
    return based || !base_.based_symbols.count(s);
  }

  std::vector<ExprP> enum_term_exprs(const Telescope& ctx, const ExprP& T, const Budget& b, bool based,
                                     int depth = 2) const {
    std::vector<ExprP> cands;
    for (int i = 0; i < ctx.size(); ++i) cands.push_back(var(i));
    cands.push_back(tt());
    for (auto& d : sig_->decls()) {
      if (d.is_type || !symbol_allowed(d.name, based)) continue;
      if (depth <= 0 && d.params.size() > 0) continue;
      for (auto& sp : enum_spines(ctx, d.params, b, based, depth - 1)) cands.push_back(sym(d.name, sp));
    }
    {
      std::vector<ExprP> small;
      for (int i = 0; i < ctx.size(); ++i) small.push_back(var(i));
      for (auto& d : sig_->decls())
        if (!d.is_type && d.params.empty() && symbol_allowed(d.name, based)) small.push_back(sym(d.name));
      for (auto& e : small) cands.push_back(refl(e));
    }
    ExprP Tw = kernel_.whnf(T);
    if (Tw->tag == Tag::Sigma) {
      for (int i = 0; i < ctx.size(); ++i)
        for (int j = 0; j < ctx.size(); ++j) cands.push_back(pair(var(i), var(j)));
    }
    std::vector<ExprP> out;
    std::set<std::string> seen;
    for (auto& e : cands) {
      if (expr_size(e) > b.type_size) continue;
      if (!kernel_.checks(ctx, e, T)) continue;
      ExprP n = kernel_.nf_term(ctx, e, T);
      std::string key = show(n, ctx.names());
      if (!seen.insert(key).second) continue;
      out.push_back(n);
      if (out.size() >= static_cast<size_t>(b.terms_per_type)) break;
    }
    return out;
  }

  std::vector<std::vector<ExprP>> enum_spines(const Telescope& ctx, const Telescope& params, const Budget& b,
                                              bool based, int depth = 1) const {
    std::vector<std::vector<ExprP>> tuples{{}};
    Budget small = b;
    small.terms_per_type = 2;
    for (int i = 0; i < params.size(); ++i) {
      std::vector<std::vector<ExprP>> next;
      for (auto& tu : tuples) {
        ExprP T = apply_comps(params.entries[i].second, tu);
        for (auto& e : enum_term_exprs(ctx, T, small, based, depth)) {
          auto t2 = tu;
          t2.push_back(e);
          next.push_back(std::move(t2));
        }
      }
      tuples = std::move(next);
      if (tuples.empty()) break;
    }
    return tuples;
  }

  std::vector<ExprP> enum_type_exprs(const Telescope& ctx, const Budget& b, bool based) const {
    std::vector<ExprP> cands;
    for (auto& d : sig_->decls()) {
      if (!d.is_type || !symbol_allowed(d.name, based)) continue;
      for (auto& sp : enum_spines(ctx, d.params, b, based, 1)) cands.push_back(sym(d.name, sp));
    }
    cands.push_back(unit_ty());
    std::vector<ExprP> base = cands;
    Budget small = b;
    small.terms_per_type = 2;
    for (auto& A : base) {
      if (A->tag != Tag::Sym) continue;
      auto terms = enum_term_exprs(ctx, A, small, based);
      for (auto& t1 : terms)
        for (auto& t2 : terms) cands.push_back(id_ty(A, t1, t2));
    }
    std::vector<ExprP> out;
    std::set<std::string> seen;
    for (auto& T : cands) {
      if (expr_size(T) > b.type_size + 2) continue;
      try {
        kernel_.check_type(ctx, T);
      } catch (const KernelError&) {
        continue;
      }
      ExprP n = kernel_.nf_type(ctx, T);
      std::string key = show(n, ctx.names());
      if (!seen.insert(key).second) continue;
      out.push_back(n);
      if (out.size() >= static_cast<size_t>(b.types_per_obj)) break;
    }
    return out;
  }
};

using SynModelPtr = std::shared_ptr<const SyntacticModel>;

}  // namespace ctxcat

#endif  // CTXCAT_SYNTACTIC_MODEL_HPP
