// Structured functors out of a free syntactic model, determined by images of
// the generator symbols and extended to all expressions by structural
// recursion through the target's logical structure. This realizes the
// universal property of the free models constructively.

#ifndef CTXCAT_GENFUNCTOR_HPP
#define CTXCAT_GENFUNCTOR_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ctxcat/presentation.hpp"

namespace ctxcat {

// Interpretation of a source telescope in the target model.
struct ICtx {
  Telescope src_tele;
  bool based = false;
  std::vector<ObjP> objs;    // objs[0] = root; objs[i+1] = objs[i].types[i]
  std::vector<TypeP> types;  // types[i] over objs[i]

  const ObjP& obj() const { return objs.back(); }
  int size() const { return static_cast<int>(types.size()); }

  ICtx extended(const Telescope& entry_src, const ObjP& eobj, const TypeP& ety) const {
    ICtx c = *this;
    c.src_tele = entry_src;
    c.objs.push_back(eobj);
    c.types.push_back(ety);
    return c;
  }
};

class GenFunctor final : public Functor {
 public:
  struct Assignment {
    std::map<std::string, TypeP> types;
    std::map<std::string, TermP> terms;
    ObjP base_image;  // image of the opaque base, when the source has one
  };

  GenFunctor(SynModelPtr src, ModelPtr dst, Assignment a, std::string nm, Preserves pres)
      : src_(std::move(src)), dst_(std::move(dst)), assign_(std::move(a)), name_(std::move(nm)), pres_(pres) {}

  std::string name() const override { return name_; }
  ModelPtr source() const override { return src_; }
  ModelPtr target() const override { return dst_; }
  Preserves preserves() const override { return pres_; }

  const Assignment& assignment() const { return assign_; }
  const SyntacticModel& syn() const { return *src_; }

  // --- interpretation ---

  ICtx interp_tele(bool based, const Telescope& t) const {
    ICtx c;
    c.based = based;
    c.src_tele = t;
    c.objs.push_back(based ? require_base() : dst_->terminal());
    Telescope partial;
    for (auto& [nm, ty] : t.entries) {
      TypeP iT = interp_type_at(c, partial, ty);
      c.types.push_back(iT);
      c.objs.push_back(dst_->ext(c.objs.back(), iT));
      partial.push(nm, ty);
    }
    c.src_tele = t;
    return c;
  }

  // Composite projection c.obj() -> c.objs[k].
  MapP proj_down(const ICtx& c, int k) const {
    MapP m = dst_->id_map(c.obj());
    for (int i = c.size() - 1; i >= k; --i) m = dst_->comp(dst_->proj(c.objs[i], c.types[i]), m);
    return m;
  }

  TypeP interp_type(const ICtx& c, const ExprP& T) const { return interp_type_at(c, c.src_tele, T); }

  TermP interp_term(const ICtx& c, const ExprP& e, const ExprP& T) const { return interp_term_at(c, c.src_tele, e, T); }

  // --- Functor interface ---

  ObjP on_obj(const ObjP& G) const override {
    const auto& o = SyntacticModel::objd(G);
    return interp_tele(o.based, o.tele).obj();
  }

  MapP on_map(const MapP& f) const override {
    const auto& m = SyntacticModel::mapd(f);
    ICtx cs = interp_tele(m.src_based, m.sub.src);
    ICtx ct = interp_tele(m.tgt_based, m.sub.tgt);
    MapP out;
    if (m.tgt_based) {
      if (!m.src_based) throw ModelError(name_ + ": map into based object from unbased source");
      out = proj_down(cs, 0);
    } else {
      out = dst_->bang(cs.obj());
    }
    Telescope partial;
    for (size_t i = 0; i < m.sub.comps.size(); ++i) {
      ExprP ity = apply_comps(m.sub.tgt.entries[i].second, {m.sub.comps.begin(), m.sub.comps.begin() + i});
      TermP t = interp_term(cs, m.sub.comps[i], ity);
      out = dst_->ext_map(out, ct.types[i], t);
      partial.push(m.sub.tgt.entries[i].first, m.sub.tgt.entries[i].second);
    }
    return out;
  }

  TypeP on_type(const ObjP& G, const TypeP& A) const override {
    const auto& o = SyntacticModel::objd(G);
    const auto& a = SyntacticModel::type(A);
    ICtx c = interp_tele(o.based, o.tele);
    return interp_type(c, src_->kernel().nf_type(o.tele, a.ty));
  }

  TermP on_term(const ObjP& G, const TypeP& A, const TermP& t) const override {
    const auto& o = SyntacticModel::objd(G);
    const auto& a = SyntacticModel::type(A);
    const auto& tm = SyntacticModel::term(t);
    ICtx c = interp_tele(o.based, o.tele);
    return interp_term(c, src_->kernel().nf_term(o.tele, tm.tm, a.ty), a.ty);
  }

 private:
  SynModelPtr src_;
  ModelPtr dst_;
  Assignment assign_;
  std::string name_;
  Preserves pres_;

  const ObjP& require_base() const {
    if (!assign_.base_image) throw ModelError(name_ + ": no image assigned for the base object");
    return assign_.base_image;
  }

  const Kernel& kern() const { return src_->kernel(); }

  const GenDecl& decl(const std::string& s) const { return src_->signature().get(s); }

  bool sym_based(const std::string& s) const { return src_->base_info().based_symbols.count(s) > 0; }

  // Map c.obj() -> interp(params of S) assembled from an interpreted spine.
  std::pair<MapP, ICtx> spine_map(const ICtx& c, const Telescope& src_scope, const std::string& s,
                                  const std::vector<ExprP>& spine) const {
    const GenDecl& d = decl(s);
    ICtx pc = interp_tele(sym_based(s), d.params);
    MapP m;
    if (sym_based(s)) {
      if (!c.based) throw ModelError(name_ + ": based symbol used over an unbased context");
      m = proj_down(c, 0);
    } else {
      m = dst_->bang(c.obj());
    }
    for (size_t i = 0; i < spine.size(); ++i) {
      ExprP ity = apply_comps(d.params.entries[i].second, {spine.begin(), spine.begin() + i});
      TermP t = interp_term_at(c, src_scope, spine[i], ity);
      m = dst_->ext_map(m, pc.types[i], t);
    }
    return {m, pc};
  }

  TypeP interp_type_at(const ICtx& c, const Telescope& src_scope, const ExprP& T0) const {
    ExprP T = kern().whnf(T0);
    switch (T->tag) {
      case Tag::Unit:
        return dst_->unit_type(c.obj());
      case Tag::IdT: {
        TypeP A = interp_type_at(c, src_scope, T->kids[0]);
        TermP a = interp_term_at(c, src_scope, T->kids[1], T->kids[0]);
        TermP b = interp_term_at(c, src_scope, T->kids[2], T->kids[0]);
        return dst_->id_type(c.obj(), A, a, b);
      }
      case Tag::Sigma:
      case Tag::Pi: {
        TypeP A = interp_type_at(c, src_scope, T->kids[0]);
        Telescope s2 = src_scope.extended("_", T->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, T->kids[1]);
        return T->tag == Tag::Sigma ? dst_->sigma_type(c.obj(), A, B) : dst_->pi_type(c.obj(), A, B);
      }
      case Tag::Sym: {
        auto it = assign_.types.find(T->head);
        if (it == assign_.types.end()) throw ModelError(name_ + ": no image for type symbol '" + T->head + "'");
        auto [m, pc] = spine_map(c, src_scope, T->head, T->kids);
        return dst_->reindex(m, it->second);
      }
      default:
        throw ModelError(name_ + ": not a type under interpretation");
    }
  }

  TermP interp_term_at(const ICtx& c, const Telescope& src_scope, const ExprP& e, const ExprP& T0) const {
    ExprP Tw = kern().whnf(T0);
    ExprP h = kern().whnf(e);
    switch (h->tag) {
      case Tag::TT:
        return dst_->tt_term(c.obj());
      case Tag::Refl: {
        if (Tw->tag != Tag::IdT) throw ModelError("refl against non-Id under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tw->kids[0]);
        TermP a = interp_term_at(c, src_scope, h->kids[0], Tw->kids[0]);
        return dst_->refl_term(c.obj(), A, a);
      }
      case Tag::Lam: {
        if (Tw->tag != Tag::Pi) throw ModelError("lambda against non-Pi under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tw->kids[0]);
        Telescope s2 = src_scope.extended("_", Tw->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tw->kids[1]);
        TermP body = interp_term_at(c2, s2, h->kids[0], Tw->kids[1]);
        return dst_->lam_term(c.obj(), A, B, body);
      }
      case Tag::Pair: {
        if (Tw->tag != Tag::Sigma) throw ModelError("pair against non-Sigma under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tw->kids[0]);
        Telescope s2 = src_scope.extended("_", Tw->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tw->kids[1]);
        TermP a = interp_term_at(c, src_scope, h->kids[0], Tw->kids[0]);
        TermP b = interp_term_at(c, src_scope, h->kids[1], inst1(Tw->kids[1], h->kids[0]));
        return dst_->pair_term(c.obj(), A, B, a, b);
      }
      default:
        return interp_neutral(c, src_scope, h).first;
    }
  }

  // Interprets a head-normal neutral, returning its image and source type.
  std::pair<TermP, ExprP> interp_neutral(const ICtx& c, const Telescope& src_scope, const ExprP& e) const {
    switch (e->tag) {
      case Tag::Var: {
        int entry = src_scope.size() - 1 - e->index;
        if (entry < 0) throw ModelError("unbound variable under interpretation");
        TermP q = dst_->var_term(c.objs[entry], c.types[entry]);
        MapP down = proj_down(c, entry + 1);
        return {dst_->subst_term(down, q), src_scope.var_type(e->index)};
      }
      case Tag::Sym: {
        auto it = assign_.terms.find(e->head);
        if (it == assign_.terms.end()) throw ModelError(name_ + ": no image for term symbol '" + e->head + "'");
        auto [m, pc] = spine_map(c, src_scope, e->head, e->kids);
        return {dst_->subst_term(m, it->second), apply_comps(decl(e->head).result, e->kids)};
      }
      case Tag::App: {
        auto [f, Tf0] = interp_neutral(c, src_scope, e->kids[0]);
        ExprP Tf = kern().whnf(Tf0);
        if (Tf->tag != Tag::Pi) throw ModelError("application of non-function under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tf->kids[0]);
        Telescope s2 = src_scope.extended("_", Tf->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tf->kids[1]);
        TermP a = interp_term_at(c, src_scope, e->kids[1], Tf->kids[0]);
        return {dst_->app_term(c.obj(), A, B, f, a), inst1(Tf->kids[1], e->kids[1])};
      }
      case Tag::Fst: {
        auto [p, Tp0] = interp_neutral(c, src_scope, e->kids[0]);
        ExprP Tp = kern().whnf(Tp0);
        if (Tp->tag != Tag::Sigma) throw ModelError("fst of non-pair under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tp->kids[0]);
        Telescope s2 = src_scope.extended("_", Tp->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tp->kids[1]);
        return {dst_->fst_term(c.obj(), A, B, p), Tp->kids[0]};
      }
      case Tag::Snd: {
        auto [p, Tp0] = interp_neutral(c, src_scope, e->kids[0]);
        ExprP Tp = kern().whnf(Tp0);
        if (Tp->tag != Tag::Sigma) throw ModelError("snd of non-pair under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tp->kids[0]);
        Telescope s2 = src_scope.extended("_", Tp->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tp->kids[1]);
        return {dst_->snd_term(c.obj(), A, B, p), inst1(Tp->kids[1], fst(e->kids[0]))};
      }
      case Tag::Funext: {
        auto [f, Tf0] = interp_neutral(c, src_scope, kern().whnf(e->kids[0]));
        ExprP Tf = kern().whnf(Tf0);
        if (Tf->tag != Tag::Pi) throw ModelError("funext over non-function under interpretation");
        TypeP A = interp_type_at(c, src_scope, Tf->kids[0]);
        Telescope s2 = src_scope.extended("_", Tf->kids[0]);
        ICtx c2 = c.extended(s2, dst_->ext(c.obj(), A), A);
        TypeP B = interp_type_at(c2, s2, Tf->kids[1]);
        TermP g = interp_term_at(c, src_scope, e->kids[1], Tf);
        ExprP hty = pi_ty(Tf->kids[0],
                          id_ty(Tf->kids[1], app(shift(e->kids[0], 1), var(0)), app(shift(e->kids[1], 1), var(0))));
        TermP hh = interp_term_at(c, src_scope, e->kids[2], hty);
        return {dst_->funext_term(c.obj(), A, B, f, g, hh), id_ty(Tf, e->kids[0], e->kids[1])};
      }
      case Tag::J: {
        const int k = e->jparams;
        ExprP pw = kern().whnf(j_path(*e));
        ExprP A;
        if (pw->tag == Tag::Refl) {
          A = kern().synth(src_scope, pw->kids[0]);
        } else {
          ExprP Tp = kern().whnf(kern().synth(src_scope, j_path(*e)));
          if (Tp->tag != Tag::IdT) throw ModelError("J over non-path under interpretation");
          A = Tp->kids[0];
        }
        Model::JArgs args;
        args.A = interp_type_at(c, src_scope, A);
        // identity-context scope: x1, x2, q
        Telescope s3 = src_scope.extended("x1", A)
                           .extended("x2", shift(A, 1))
                           .extended("q", id_ty(shift(A, 2), var(1), var(0)));
        TypeP iA = args.A;
        ObjP o1 = dst_->ext(c.obj(), iA);
        TypeP iA1 = dst_->reindex(dst_->proj(c.obj(), iA), iA);
        ObjP o2 = dst_->ext(o1, iA1);
        ICtx c1 = c.extended(src_scope.extended("x1", A), o1, iA);
        ICtx c2 = c1.extended(src_scope.extended("x1", A).extended("x2", shift(A, 1)), o2, iA1);
        TypeP qty = interp_type_at(c2, c2.src_tele, id_ty(shift(A, 2), var(1), var(0)));
        ICtx c3 = c2.extended(s3, dst_->ext(o2, qty), qty);
        // deltas
        Telescope sD = s3;
        ICtx cD = c3;
        for (int i = 0; i < k; ++i) {
          TypeP Di = interp_type_at(cD, sD, j_delta(*e, i));
          args.deltas.push_back(Di);
          sD = sD.extended("_", j_delta(*e, i));
          cD = cD.extended(sD, dst_->ext(cD.obj(), Di), Di);
        }
        args.motive = interp_type_at(cD, sD, j_motive(*e));
        // base case over G.(x:A).D[diag]; ambient references move past x
        std::vector<ExprP> diag = {var(0), var(0), refl(var(0))};
        auto diag_inst = [&](const ExprP& body, int off) { return inst_at(shift(body, 1, 3 + off), off, diag); };
        Telescope sd = src_scope.extended("x", A);
        ICtx cd = c.extended(sd, o1, iA);
        for (int i = 0; i < k; ++i) {
          ExprP Dd = diag_inst(j_delta(*e, i), i);
          TypeP iDd = interp_type_at(cd, sd, Dd);
          sd = sd.extended("_", Dd);
          cd = cd.extended(sd, dst_->ext(cd.obj(), iDd), iDd);
        }
        args.base = interp_term_at(cd, sd, j_base(*e), diag_inst(j_motive(*e), k));
        args.lhs = interp_term_at(c, src_scope, j_lhs(*e), A);
        args.rhs = interp_term_at(c, src_scope, j_rhs(*e), A);
        args.path = interp_term_at(c, src_scope, j_path(*e), id_ty(A, j_lhs(*e), j_rhs(*e)));
        std::vector<ExprP> inst = {j_lhs(*e), j_rhs(*e), j_path(*e)};
        for (int i = 0; i < k; ++i) {
          args.params.push_back(interp_term_at(c, src_scope, j_param(*e, i), inst_at(j_delta(*e, i), 0, inst)));
          inst.push_back(j_param(*e, i));
        }
        return {dst_->j_term(c.obj(), args), inst_at(j_motive(*e), 0, inst)};
      }
      default:
        throw ModelError("not a neutral term under interpretation");
    }
  }
};

using GenFunctorPtr = std::shared_ptr<const GenFunctor>;

// Incremental builder: symbols must be assigned in declaration order; the
// interpretation of each parameter telescope is available before assigning.
class GenFunctorBuilder {
 public:
  GenFunctorBuilder(SynModelPtr src, ModelPtr dst, std::string name)
      : src_(std::move(src)), dst_(std::move(dst)), name_(std::move(name)) {
    pres_.pi = src_->flavour() == Flavour::Id1SigmaPiExt && dst_->has_pi();
  }

  void set_base_image(ObjP G) { a_.base_image = std::move(G); }
  void assign_type(const std::string& s, TypeP img) { a_.types[s] = std::move(img); }
  void assign_term(const std::string& s, TermP img) { a_.terms[s] = std::move(img); }

  // Interpretation of the parameter telescope of symbol s under the partial
  // assignment; valid once all earlier symbols are assigned.
  ICtx params_ictx(const std::string& s) const {
    GenFunctor f(src_, dst_, a_, name_, pres_);
    const GenDecl& d = src_->signature().get(s);
    return f.interp_tele(src_->base_info().based_symbols.count(s) > 0, d.params);
  }

  // Interpretation of the result type of a term symbol over params_ictx(s).
  TypeP result_type(const std::string& s) const {
    GenFunctor f(src_, dst_, a_, name_, pres_);
    const GenDecl& d = src_->signature().get(s);
    ICtx c = f.interp_tele(src_->base_info().based_symbols.count(s) > 0, d.params);
    return f.interp_type(c, d.result);
  }

  GenFunctorPtr build() const { return std::make_shared<GenFunctor>(src_, dst_, a_, name_, pres_); }

  const ModelPtr& target() const { return dst_; }
  const SynModelPtr& source() const { return src_; }

 private:
  SynModelPtr src_;
  ModelPtr dst_;
  GenFunctor::Assignment a_;
  std::string name_;
  Functor::Preserves pres_;
};

// Symbol-renaming functor between syntactic models (inclusions, retractions).
inline GenFunctorPtr rename_functor(const SynModelPtr& src, const SynModelPtr& dst, std::string name,
                                    const std::map<std::string, std::string>& ren = {}) {
  GenFunctorBuilder b(src, dst, std::move(name));
  if (src->base_info().has_base) {
    if (!dst->base_info().has_base) throw ModelError("renaming functor: target lacks a base object");
    b.set_base_image(dst->base_obj());
  }
  auto renamed = [&](const std::string& s) {
    auto it = ren.find(s);
    return it == ren.end() ? s : it->second;
  };
  for (auto& d : src->signature().decls()) {
    ICtx c = b.params_ictx(d.name);
    const Telescope& t = SyntacticModel::tele(c.obj());
    std::vector<ExprP> spine;
    for (int i = 0; i < d.params.size(); ++i) spine.push_back(var(d.params.size() - 1 - i));
    const std::string tgt_name = renamed(d.name);
    const GenDecl* td = dst->signature().find(tgt_name);
    if (!td) throw ModelError("renaming functor: target lacks symbol '" + tgt_name + "'");
    if (d.is_type)
      b.assign_type(d.name, dst->ty(t, sym(tgt_name, spine), SyntacticModel::objd(c.obj()).based));
    else
      b.assign_term(d.name, dst->tm(t, apply_comps(td->result, spine), sym(tgt_name, spine),
                                    SyntacticModel::objd(c.obj()).based));
  }
  return b.build();
}

}  // namespace ctxcat

#endif  // CTXCAT_GENFUNCTOR_HPP
