// Fibrant slices C//Gamma, the contextual core, the coreflection, and the
// functors induced by maps of the base. Slice objects store the telescope of
// extension types, so grading and ft are exact.

#ifndef CTXCAT_SLICE_HPP
#define CTXCAT_SLICE_HPP

#include <memory>
#include <string>
#include <vector>

#include "ctxcat/model.hpp"

namespace ctxcat {

struct SliceObj final : ObjData {
  std::vector<TypeP> ext;  // entry i lives over base(Gamma).ext[0..i)
  explicit SliceObj(std::vector<TypeP> e) : ext(std::move(e)) {}
};

struct SliceMap final : MapData {
  MapP base;  // flat(dom) -> flat(cod), over Gamma
  std::vector<TypeP> src_ext, tgt_ext;
  SliceMap(MapP b, std::vector<TypeP> s, std::vector<TypeP> t)
      : base(std::move(b)), src_ext(std::move(s)), tgt_ext(std::move(t)) {}
};

struct SliceType final : TypeData {
  TypeP base;  // over flat(over)
  explicit SliceType(TypeP b) : base(std::move(b)) {}
};

struct SliceTerm final : TermData {
  TermP base;
  explicit SliceTerm(TermP b) : base(std::move(b)) {}
};

class SliceModel final : public Model {
 public:
  SliceModel(ModelPtr base, ObjP gamma, std::string nm = "")
      : base_(std::move(base)), gamma_(std::move(gamma)) {
    name_ = nm.empty() ? base_->name() + "//" + base_->show_obj(gamma_) : std::move(nm);
  }

  const ModelPtr& base_model() const { return base_; }
  const ObjP& base_point() const { return gamma_; }

  static const SliceObj& objd(const ObjP& G) { return cast_data<SliceObj>(G, "slice object"); }
  static const MapP& base_map(const MapP& f) { return cast_data<SliceMap>(f, "slice map").base; }
  static const TypeP& base_type(const TypeP& A) { return cast_data<SliceType>(A, "slice type").base; }
  static const TermP& base_term(const TermP& a) { return cast_data<SliceTerm>(a, "slice term").base; }

  ObjP wrap_obj(std::vector<TypeP> e) const { return std::make_shared<SliceObj>(std::move(e)); }
  TypeP wrap_type(TypeP b) const { return std::make_shared<SliceType>(std::move(b)); }
  TermP wrap_term(TermP b) const { return std::make_shared<SliceTerm>(std::move(b)); }
  MapP wrap_map(MapP b, std::vector<TypeP> s, std::vector<TypeP> t) const {
    return std::make_shared<SliceMap>(std::move(b), std::move(s), std::move(t));
  }

  // The context extension Gamma.ext in the base model.
  ObjP flat(const std::vector<TypeP>& ext, int upto = -1) const {
    ObjP o = gamma_;
    const int n = upto < 0 ? static_cast<int>(ext.size()) : upto;
    for (int i = 0; i < n; ++i) o = base_->ext(o, ext[static_cast<size_t>(i)]);
    return o;
  }

  // Composite projection flat(ext) -> flat(ext, k).
  MapP proj_down(const std::vector<TypeP>& ext, int k) const {
    MapP m = base_->id_map(flat(ext));
    for (int i = static_cast<int>(ext.size()) - 1; i >= k; --i)
      m = base_->comp(base_->proj(flat(ext, i), ext[static_cast<size_t>(i)]), m);
    return m;
  }

  std::string name() const override { return name_; }
  Flavour flavour() const override { return base_->flavour(); }
  bool graded() const override { return true; }
  int degree(const ObjP& G) const override { return static_cast<int>(objd(G).ext.size()); }

  std::vector<TypeP> tele_of(const ObjP& G) const override {
    const auto& o = objd(G);
    std::vector<TypeP> out;
    out.reserve(o.ext.size());
    for (auto& t : o.ext) out.push_back(wrap_type(t));
    return out;
  }

  ObjP terminal() const override { return wrap_obj({}); }

  ObjP ext(const ObjP& G, const TypeP& A) const override {
    auto e = objd(G).ext;
    e.push_back(base_type(A));
    return wrap_obj(std::move(e));
  }

  ObjP ft_obj(const ObjP& G) const override {
    auto e = objd(G).ext;
    if (e.empty()) throw ModelError("ft of the slice terminal");
    e.pop_back();
    return wrap_obj(std::move(e));
  }

  MapP proj(const ObjP& G, const TypeP& A) const override {
    const auto& e = objd(G).ext;
    auto e2 = e;
    e2.push_back(base_type(A));
    return wrap_map(base_->proj(flat(e), base_type(A)), e2, e);
  }

  TypeP reindex(const MapP& f, const TypeP& A) const override {
    return wrap_type(base_->reindex(base_map(f), base_type(A)));
  }

  MapP connecting(const MapP& f, const TypeP& A) const override {
    const auto& m = cast_data<SliceMap>(f, "slice map");
    auto s2 = m.src_ext;
    s2.push_back(base_->reindex(m.base, base_type(A)));
    auto t2 = m.tgt_ext;
    t2.push_back(base_type(A));
    return wrap_map(base_->connecting(m.base, base_type(A)), std::move(s2), std::move(t2));
  }

  MapP id_map(const ObjP& G) const override {
    const auto& e = objd(G).ext;
    return wrap_map(base_->id_map(flat(e)), e, e);
  }

  MapP comp(const MapP& g, const MapP& f) const override {
    const auto& mg = cast_data<SliceMap>(g, "slice map");
    const auto& mf = cast_data<SliceMap>(f, "slice map");
    return wrap_map(base_->comp(mg.base, mf.base), mf.src_ext, mg.tgt_ext);
  }

  ObjP dom(const MapP& f) const override { return wrap_obj(cast_data<SliceMap>(f, "slice map").src_ext); }
  ObjP cod(const MapP& f) const override { return wrap_obj(cast_data<SliceMap>(f, "slice map").tgt_ext); }

  MapP bang(const ObjP& G) const override {
    const auto& e = objd(G).ext;
    return wrap_map(proj_down(e, 0), e, {});
  }

  MapP ext_map(const MapP& f, const TypeP& A, const TermP& a) const override {
    const auto& m = cast_data<SliceMap>(f, "slice map");
    auto t2 = m.tgt_ext;
    t2.push_back(base_type(A));
    return wrap_map(base_->ext_map(m.base, base_type(A), base_term(a)), m.src_ext, std::move(t2));
  }

  TermP var_term(const ObjP& G, const TypeP& A) const override {
    return wrap_term(base_->var_term(flat(objd(G).ext), base_type(A)));
  }

  TermP subst_term(const MapP& f, const TermP& a) const override {
    return wrap_term(base_->subst_term(base_map(f), base_term(a)));
  }

  TermP last_term(const MapP& v, const ObjP& G, const TypeP& A) const override {
    return wrap_term(base_->last_term(base_map(v), flat(objd(G).ext), base_type(A)));
  }

  bool obj_eq(const ObjP& a, const ObjP& b) const override {
    const auto& x = objd(a).ext;
    const auto& y = objd(b).ext;
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (!base_->type_eq(x[i], y[i])) return false;
    return true;
  }
  bool map_eq(const MapP& f, const MapP& g) const override { return base_->map_eq(base_map(f), base_map(g)); }
  bool type_eq(const TypeP& A, const TypeP& B) const override { return base_->type_eq(base_type(A), base_type(B)); }
  bool term_eq(const TermP& a, const TermP& b) const override { return base_->term_eq(base_term(a), base_term(b)); }

  bool has_id() const override { return base_->has_id(); }
  bool has_unit() const override { return base_->has_unit(); }
  bool has_sigma() const override { return base_->has_sigma(); }
  bool has_pi() const override { return base_->has_pi(); }

  TypeP id_type(const ObjP& G, const TypeP& A, const TermP& a, const TermP& b) const override {
    return wrap_type(base_->id_type(flat(objd(G).ext), base_type(A), base_term(a), base_term(b)));
  }
  TermP refl_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return wrap_term(base_->refl_term(flat(objd(G).ext), base_type(A), base_term(a)));
  }
  TermP j_term(const ObjP& G, const JArgs& args) const override {
    Model::JArgs b;
    b.A = base_type(args.A);
    for (auto& d : args.deltas) b.deltas.push_back(base_type(d));
    b.motive = base_type(args.motive);
    b.base = base_term(args.base);
    b.lhs = base_term(args.lhs);
    b.rhs = base_term(args.rhs);
    b.path = base_term(args.path);
    for (auto& s : args.params) b.params.push_back(base_term(s));
    return wrap_term(base_->j_term(flat(objd(G).ext), b));
  }
  TypeP unit_type(const ObjP& G) const override { return wrap_type(base_->unit_type(flat(objd(G).ext))); }
  TermP tt_term(const ObjP& G) const override { return wrap_term(base_->tt_term(flat(objd(G).ext))); }
  TypeP sigma_type(const ObjP& G, const TypeP& A, const TypeP& B) const override {
    return wrap_type(base_->sigma_type(flat(objd(G).ext), base_type(A), base_type(B)));
  }
  TermP pair_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& a, const TermP& b) const override {
    return wrap_term(base_->pair_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(a), base_term(b)));
  }
  TermP fst_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const override {
    return wrap_term(base_->fst_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(p)));
  }
  TermP snd_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const override {
    return wrap_term(base_->snd_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(p)));
  }
  TypeP pi_type(const ObjP& G, const TypeP& A, const TypeP& B) const override {
    return wrap_type(base_->pi_type(flat(objd(G).ext), base_type(A), base_type(B)));
  }
  TermP lam_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& body) const override {
    return wrap_term(base_->lam_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(body)));
  }
  TermP app_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& a) const override {
    return wrap_term(base_->app_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(f), base_term(a)));
  }
  TermP funext_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& g,
                    const TermP& h) const override {
    return wrap_term(
        base_->funext_term(flat(objd(G).ext), base_type(A), base_type(B), base_term(f), base_term(g), base_term(h)));
  }

  void validate_obj(const ObjP& G) const override {
    const auto& e = objd(G).ext;
    for (size_t i = 0; i < e.size(); ++i) base_->validate_type(flat(e, static_cast<int>(i)), e[i]);
  }
  void validate_type(const ObjP& G, const TypeP& A) const override {
    base_->validate_type(flat(objd(G).ext), base_type(A));
  }
  void validate_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    base_->validate_term(flat(objd(G).ext), base_type(A), base_term(a));
  }
  void validate_map(const MapP& f) const override {
    const auto& m = cast_data<SliceMap>(f, "slice map");
    base_->validate_map(m.base);
    if (!base_->obj_eq(base_->dom(m.base), flat(m.src_ext)) || !base_->obj_eq(base_->cod(m.base), flat(m.tgt_ext)))
      throw ModelError("slice map endpoints do not match its extensions");
    // maps in the slice are maps over Gamma
    if (!base_->map_eq(base_->comp(proj_down(m.tgt_ext, 0), m.base), proj_down(m.src_ext, 0)))
      throw ModelError("slice map is not a map over the base point");
  }

  std::vector<ObjP> enum_objects(const Budget& b) const override {
    std::vector<std::vector<TypeP>> acc{{}};
    size_t lo = 0;
    for (int d = 0; d < b.degree; ++d) {
      size_t hi = acc.size();
      for (size_t i = lo; i < hi && acc.size() < static_cast<size_t>(b.objects_cap); ++i) {
        for (auto& T : base_->enum_types(flat(acc[i]), b)) {
          if (acc.size() >= static_cast<size_t>(b.objects_cap)) break;
          auto e2 = acc[i];
          e2.push_back(T);
          acc.push_back(std::move(e2));
        }
      }
      lo = hi;
    }
    std::vector<ObjP> out;
    out.reserve(acc.size());
    for (auto& e : acc) out.push_back(wrap_obj(std::move(e)));
    return out;
  }

  std::vector<TypeP> enum_types(const ObjP& G, const Budget& b) const override {
    std::vector<TypeP> out;
    for (auto& T : base_->enum_types(flat(objd(G).ext), b)) out.push_back(wrap_type(T));
    return out;
  }

  std::vector<TermP> enum_terms(const ObjP& G, const TypeP& A, const Budget& b) const override {
    std::vector<TermP> out;
    for (auto& t : base_->enum_terms(flat(objd(G).ext), base_type(A), b)) out.push_back(wrap_term(t));
    return out;
  }

  std::vector<MapP> enum_maps(const ObjP& X, const ObjP& Y, const Budget& b) const override {
    const auto& xe = objd(X).ext;
    const auto& ye = objd(Y).ext;
    std::vector<MapP> out;
    MapP px = proj_down(xe, 0);
    MapP py = proj_down(ye, 0);
    for (auto& f : base_->enum_maps(flat(xe), flat(ye), b)) {
      if (!base_->map_eq(base_->comp(py, f), px)) continue;
      out.push_back(wrap_map(f, xe, ye));
    }
    return out;
  }

  std::string show_obj(const ObjP& G) const override {
    const auto& e = objd(G).ext;
    std::string s = "//(";
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) s += ", ";
      s += base_->show_type(flat(e, static_cast<int>(i)), e[i]);
    }
    return s + ")";
  }
  std::string show_map(const MapP& f) const override { return base_->show_map(base_map(f)); }
  std::string show_type(const ObjP& G, const TypeP& A) const override {
    return base_->show_type(flat(objd(G).ext), base_type(A));
  }
  std::string show_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return base_->show_term(flat(objd(G).ext), base_type(A), base_term(a));
  }

 private:
  ModelPtr base_;
  ObjP gamma_;
  std::string name_;
};

using SliceModelPtr = std::shared_ptr<const SliceModel>;

inline SliceModelPtr fibrant_slice(const ModelPtr& C, const ObjP& gamma) {
  C->validate_obj(gamma);
  return std::make_shared<SliceModel>(C, gamma);
}

inline SliceModelPtr core(const ModelPtr& C) {
  return std::make_shared<SliceModel>(C, C->terminal(), "core(" + C->name() + ")");
}

// The counit core(C) -> C: flattening. A structured CwA map.
class CoreInclusion final : public Functor {
 public:
  explicit CoreInclusion(SliceModelPtr c) : c_(std::move(c)) {}
  std::string name() const override { return "incl(" + c_->name() + ")"; }
  ModelPtr source() const override { return c_; }
  ModelPtr target() const override { return c_->base_model(); }
  ObjP on_obj(const ObjP& G) const override { return c_->flat(SliceModel::objd(G).ext); }
  MapP on_map(const MapP& f) const override { return SliceModel::base_map(f); }
  TypeP on_type(const ObjP&, const TypeP& A) const override { return SliceModel::base_type(A); }
  TermP on_term(const ObjP&, const TypeP&, const TermP& a) const override { return SliceModel::base_term(a); }

 private:
  SliceModelPtr c_;
};

// Unique factorization of a functor from a graded source through the core of
// its target: F-bar with incl . F-bar = F. Preserves whatever F does.
class CoreFactor final : public Functor {
 public:
  CoreFactor(FunctorPtr F, SliceModelPtr corem) : f_(std::move(F)), core_(std::move(corem)) {
    if (!f_->source()->graded()) throw ModelError("core_factor: source is not graded");
  }
  std::string name() const override { return "factor(" + f_->name() + ")"; }
  ModelPtr source() const override { return f_->source(); }
  ModelPtr target() const override { return core_; }
  Preserves preserves() const override { return f_->preserves(); }
  ObjP on_obj(const ObjP& G) const override {
    ModelPtr S = f_->source();
    std::vector<TypeP> out;
    std::vector<TypeP> tele = S->tele_of(G);
    ObjP cur = S->terminal();
    for (auto& T : tele) {
      out.push_back(f_->on_type(cur, T));
      cur = S->ext(cur, T);
    }
    return core_->wrap_obj(std::move(out));
  }
  MapP on_map(const MapP& m) const override {
    return core_->wrap_map(f_->on_map(m), SliceModel::objd(on_obj(f_->source()->dom(m))).ext,
                           SliceModel::objd(on_obj(f_->source()->cod(m))).ext);
  }
  TypeP on_type(const ObjP& G, const TypeP& A) const override { return core_->wrap_type(f_->on_type(G, A)); }
  TermP on_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return core_->wrap_term(f_->on_term(G, A, a));
  }

 private:
  FunctorPtr f_;
  SliceModelPtr core_;
};

inline FunctorPtr core_factor(const FunctorPtr& F) {
  return std::make_shared<CoreFactor>(F, core(F->target()));
}

// Slice functor F//Gamma : C//Gamma -> D//F(Gamma), componentwise.
class SliceFunctor final : public Functor {
 public:
  SliceFunctor(FunctorPtr F, SliceModelPtr src, SliceModelPtr dst)
      : f_(std::move(F)), src_(std::move(src)), dst_(std::move(dst)) {}
  std::string name() const override { return f_->name() + "//" + src_->base_model()->show_obj(src_->base_point()); }
  ModelPtr source() const override { return src_; }
  ModelPtr target() const override { return dst_; }
  Preserves preserves() const override { return f_->preserves(); }

  ObjP on_obj(const ObjP& G) const override {
    std::vector<TypeP> out;
    ObjP cur = src_->base_point();
    for (auto& T : SliceModel::objd(G).ext) {
      out.push_back(f_->on_type(cur, T));
      cur = f_->source()->ext(cur, T);
    }
    return dst_->wrap_obj(std::move(out));
  }
  MapP on_map(const MapP& m) const override {
    const auto& sm = cast_data<SliceMap>(m, "slice map");
    return dst_->wrap_map(f_->on_map(sm.base), SliceModel::objd(on_obj(src_->wrap_obj(sm.src_ext))).ext,
                          SliceModel::objd(on_obj(src_->wrap_obj(sm.tgt_ext))).ext);
  }
  TypeP on_type(const ObjP& G, const TypeP& A) const override {
    return dst_->wrap_type(f_->on_type(src_->flat(SliceModel::objd(G).ext), SliceModel::base_type(A)));
  }
  TermP on_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return dst_->wrap_term(f_->on_term(src_->flat(SliceModel::objd(G).ext), SliceModel::base_type(A),
                                       SliceModel::base_term(a)));
  }

 private:
  FunctorPtr f_;
  SliceModelPtr src_, dst_;
};

inline FunctorPtr slice_functor(const FunctorPtr& F, const ObjP& gamma) {
  auto src = fibrant_slice(F->source(), gamma);
  auto dst = fibrant_slice(F->target(), F->on_obj(gamma));
  return std::make_shared<SliceFunctor>(F, src, dst);
}

// The contextual functor f^* : C//Gamma -> C//Gamma' induced by f, acting by
// pullback on extensions; functorial in f and preserving logical structure.
class ReindexSlice final : public Functor {
 public:
  ReindexSlice(ModelPtr C, MapP f) : c_(std::move(C)), f_(std::move(f)) {
    src_ = fibrant_slice(c_, c_->cod(f_));
    dst_ = fibrant_slice(c_, c_->dom(f_));
  }
  std::string name() const override { return "reindex(" + c_->show_map(f_) + ")"; }
  ModelPtr source() const override { return src_; }
  ModelPtr target() const override { return dst_; }

  // The connecting chain f.Delta : Gamma'.f*Delta -> Gamma.Delta.
  MapP conn_chain(const std::vector<TypeP>& ext) const {
    MapP m = f_;
    for (auto& T : ext) m = c_->connecting(m, T);
    return m;
  }

  ObjP on_obj(const ObjP& G) const override {
    std::vector<TypeP> out;
    MapP m = f_;
    for (auto& T : SliceModel::objd(G).ext) {
      out.push_back(c_->reindex(m, T));
      m = c_->connecting(m, T);
    }
    return dst_->wrap_obj(std::move(out));
  }

  MapP on_map(const MapP& h) const override {
    const auto& sm = cast_data<SliceMap>(h, "slice map");
    const auto& d1 = sm.src_ext;
    const auto& d2 = sm.tgt_ext;
    std::vector<TypeP> d1p = SliceModel::objd(on_obj(src_->wrap_obj(d1))).ext;
    std::vector<TypeP> d2p = SliceModel::objd(on_obj(src_->wrap_obj(d2))).ext;
    MapP chain1 = conn_chain(d1);  // Gamma'.f*D1 -> Gamma.D1
    // Build the pulled-back map by components.
    MapP out = dst_->proj_down(d1p, 0);  // flat'(D1') -> Gamma'
    for (size_t i = 0; i < d2.size(); ++i) {
      // component i of h: flat(D1) -> flat(D2 prefix i+1), then extract
      MapP through = src_->proj_down(d2, static_cast<int>(i) + 1);
      MapP hi = c_->comp(through, sm.base);
      TermP t = c_->last_term(hi, src_->flat(d2, static_cast<int>(i)), d2[i]);
      TermP tp = c_->subst_term(chain1, t);
      out = c_->ext_map(out, d2p[i], tp);
    }
    return dst_->wrap_map(out, d1p, d2p);
  }

  TypeP on_type(const ObjP& G, const TypeP& A) const override {
    return dst_->wrap_type(c_->reindex(conn_chain(SliceModel::objd(G).ext), SliceModel::base_type(A)));
  }
  TermP on_term(const ObjP& G, const TypeP&, const TermP& a) const override {
    return dst_->wrap_term(c_->subst_term(conn_chain(SliceModel::objd(G).ext), SliceModel::base_term(a)));
  }

 private:
  ModelPtr c_;
  MapP f_;
  SliceModelPtr src_, dst_;
};

inline FunctorPtr reindex_slice(const ModelPtr& C, const MapP& f) { return std::make_shared<ReindexSlice>(C, f); }

}  // namespace ctxcat

#endif  // CTXCAT_SLICE_HPP
