// Test support: a model wrapper that forwards everything to an inner model.
// Mutation tests override single operations to corrupt a law.

#ifndef CTXCAT_TESTS_FORWARDING_MODEL_HPP
#define CTXCAT_TESTS_FORWARDING_MODEL_HPP

#include "ctxcat/model.hpp"

namespace ctxcat::testing {

class ForwardingModel : public Model {
 public:
  explicit ForwardingModel(ModelPtr inner) : inner_(std::move(inner)) {}

  std::string name() const override { return "wrap(" + inner_->name() + ")"; }
  Flavour flavour() const override { return inner_->flavour(); }
  bool graded() const override { return inner_->graded(); }
  int degree(const ObjP& G) const override { return inner_->degree(G); }
  std::vector<TypeP> tele_of(const ObjP& G) const override { return inner_->tele_of(G); }

  ObjP terminal() const override { return inner_->terminal(); }
  ObjP ext(const ObjP& G, const TypeP& A) const override { return inner_->ext(G, A); }
  ObjP ft_obj(const ObjP& G) const override { return inner_->ft_obj(G); }
  MapP proj(const ObjP& G, const TypeP& A) const override { return inner_->proj(G, A); }
  TypeP reindex(const MapP& f, const TypeP& A) const override { return inner_->reindex(f, A); }
  MapP connecting(const MapP& f, const TypeP& A) const override { return inner_->connecting(f, A); }
  MapP id_map(const ObjP& G) const override { return inner_->id_map(G); }
  MapP comp(const MapP& g, const MapP& f) const override { return inner_->comp(g, f); }
  ObjP dom(const MapP& f) const override { return inner_->dom(f); }
  ObjP cod(const MapP& f) const override { return inner_->cod(f); }
  MapP bang(const ObjP& G) const override { return inner_->bang(G); }
  MapP ext_map(const MapP& f, const TypeP& A, const TermP& a) const override { return inner_->ext_map(f, A, a); }
  TermP var_term(const ObjP& G, const TypeP& A) const override { return inner_->var_term(G, A); }
  TermP subst_term(const MapP& f, const TermP& a) const override { return inner_->subst_term(f, a); }
  TermP last_term(const MapP& v, const ObjP& G, const TypeP& A) const override { return inner_->last_term(v, G, A); }

  bool obj_eq(const ObjP& a, const ObjP& b) const override { return inner_->obj_eq(a, b); }
  bool map_eq(const MapP& f, const MapP& g) const override { return inner_->map_eq(f, g); }
  bool type_eq(const TypeP& A, const TypeP& B) const override { return inner_->type_eq(A, B); }
  bool term_eq(const TermP& a, const TermP& b) const override { return inner_->term_eq(a, b); }

  bool has_id() const override { return inner_->has_id(); }
  bool has_unit() const override { return inner_->has_unit(); }
  bool has_sigma() const override { return inner_->has_sigma(); }
  bool has_pi() const override { return inner_->has_pi(); }

  TypeP id_type(const ObjP& G, const TypeP& A, const TermP& a, const TermP& b) const override {
    return inner_->id_type(G, A, a, b);
  }
  TermP refl_term(const ObjP& G, const TypeP& A, const TermP& a) const override { return inner_->refl_term(G, A, a); }
  TermP j_term(const ObjP& G, const JArgs& args) const override { return inner_->j_term(G, args); }
  TypeP unit_type(const ObjP& G) const override { return inner_->unit_type(G); }
  TermP tt_term(const ObjP& G) const override { return inner_->tt_term(G); }
  TypeP sigma_type(const ObjP& G, const TypeP& A, const TypeP& B) const override {
    return inner_->sigma_type(G, A, B);
  }
  TermP pair_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& a, const TermP& b) const override {
    return inner_->pair_term(G, A, B, a, b);
  }
  TermP fst_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const override {
    return inner_->fst_term(G, A, B, p);
  }
  TermP snd_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const override {
    return inner_->snd_term(G, A, B, p);
  }
  TypeP pi_type(const ObjP& G, const TypeP& A, const TypeP& B) const override { return inner_->pi_type(G, A, B); }
  TermP lam_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& body) const override {
    return inner_->lam_term(G, A, B, body);
  }
  TermP app_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& a) const override {
    return inner_->app_term(G, A, B, f, a);
  }
  TermP funext_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& g,
                    const TermP& h) const override {
    return inner_->funext_term(G, A, B, f, g, h);
  }

  void validate_obj(const ObjP& G) const override { inner_->validate_obj(G); }
  void validate_type(const ObjP& G, const TypeP& A) const override { inner_->validate_type(G, A); }
  void validate_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    inner_->validate_term(G, A, a);
  }
  void validate_map(const MapP& f) const override { inner_->validate_map(f); }

  std::vector<ObjP> enum_objects(const Budget& b) const override { return inner_->enum_objects(b); }
  std::vector<TypeP> enum_types(const ObjP& G, const Budget& b) const override { return inner_->enum_types(G, b); }
  std::vector<TermP> enum_terms(const ObjP& G, const TypeP& A, const Budget& b) const override {
    return inner_->enum_terms(G, A, b);
  }
  std::vector<MapP> enum_maps(const ObjP& X, const ObjP& Y, const Budget& b) const override {
    return inner_->enum_maps(X, Y, b);
  }

  std::string show_obj(const ObjP& G) const override { return inner_->show_obj(G); }
  std::string show_map(const MapP& f) const override { return inner_->show_map(f); }
  std::string show_type(const ObjP& G, const TypeP& A) const override { return inner_->show_type(G, A); }
  std::string show_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return inner_->show_term(G, A, a);
  }

 protected:
  ModelPtr inner_;
};

// Corruption from the worked counterexample: the connecting map is replaced
// by the composite with the projection.
class CorruptedConnecting final : public ForwardingModel {
 public:
  using ForwardingModel::ForwardingModel;
  std::string name() const override { return "corrupted(" + inner_->name() + ")"; }
  MapP connecting(const MapP& f, const TypeP& A) const override {
    TypeP fA = inner_->reindex(f, A);
    return inner_->comp(f, inner_->proj(inner_->dom(f), fA));
  }
};

}  // namespace ctxcat::testing

#endif  // CTXCAT_TESTS_FORWARDING_MODEL_HPP
