// The uniform contextual-category / CwA interface. Models are presented
// intensionally: queries over a finitely presented fragment, with budgeted
// enumerators for the law suites. All handles are immutable and shareable.

#ifndef CTXCAT_MODEL_HPP
#define CTXCAT_MODEL_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxcat/expr.hpp"

namespace ctxcat {

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& m) : std::runtime_error(m) {}
};

struct ObjData {
  virtual ~ObjData() = default;
};
struct MapData {
  virtual ~MapData() = default;
};
struct TypeData {
  virtual ~TypeData() = default;
};
struct TermData {
  virtual ~TermData() = default;
};

using ObjP = std::shared_ptr<const ObjData>;
using MapP = std::shared_ptr<const MapData>;
using TypeP = std::shared_ptr<const TypeData>;
using TermP = std::shared_ptr<const TermData>;

struct Budget {
  int degree = 2;          // enumeration depth for objects
  int type_size = 4;       // syntactic size bound for enumerated types/terms
  int types_per_obj = 6;
  int terms_per_type = 4;
  int maps_per_pair = 8;
  int objects_cap = 12;

  static Budget of(int n) {
    Budget b;
    b.degree = n;
    if (n >= 3) {
      b.types_per_obj = 5;
      b.objects_cap = 14;
    }
    return b;
  }
};

enum class Flavour { Id1Sigma, Id1SigmaPiExt };

class Model;
using ModelPtr = std::shared_ptr<const Model>;

class Model : public std::enable_shared_from_this<Model> {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual Flavour flavour() const { return Flavour::Id1Sigma; }

  // Grading; graded models are the contextual ones.
  virtual bool graded() const { return false; }
  virtual int degree(const ObjP&) const { throw ModelError(name() + ": ungraded model has no degree"); }
  // For graded models: the telescope expressing G as 1.T0...T(n-1).
  virtual std::vector<TypeP> tele_of(const ObjP&) const { throw ModelError(name() + ": no telescope view"); }

  // --- category with attributes structure ---
  virtual ObjP terminal() const = 0;
  virtual ObjP ext(const ObjP& G, const TypeP& A) const = 0;
  virtual ObjP ft_obj(const ObjP& G) const = 0;
  virtual MapP proj(const ObjP& G, const TypeP& A) const = 0;  // p_A : G.A -> G
  virtual TypeP reindex(const MapP& f, const TypeP& A) const = 0;  // f*A (A over cod f)
  virtual MapP connecting(const MapP& f, const TypeP& A) const = 0;  // f.A : dom(f).f*A -> cod(f).A
  virtual MapP id_map(const ObjP& G) const = 0;
  virtual MapP comp(const MapP& g, const MapP& f) const = 0;  // g after f
  virtual ObjP dom(const MapP& f) const = 0;
  virtual ObjP cod(const MapP& f) const = 0;
  virtual MapP bang(const ObjP& G) const = 0;  // G -> 1
  // <f, a> : dom(f) -> cod(f).A for a : Tm(dom f, f*A)
  virtual MapP ext_map(const MapP& f, const TypeP& A, const TermP& a) const = 0;
  // q_A : Tm(G.A, p_A^* A)
  virtual TermP var_term(const ObjP& G, const TypeP& A) const = 0;
  virtual TermP subst_term(const MapP& f, const TermP& a) const = 0;
  // Extract the A-component of a map v : X -> G.A as a term of (p_A v)^* A.
  virtual TermP last_term(const MapP& v, const ObjP& G, const TypeP& A) const = 0;

  MapP section_map(const ObjP& G, const TypeP& A, const TermP& a) const { return ext_map(id_map(G), A, a); }

  // --- definitional equality ---
  virtual bool obj_eq(const ObjP&, const ObjP&) const = 0;
  virtual bool map_eq(const MapP&, const MapP&) const = 0;
  virtual bool type_eq(const TypeP&, const TypeP&) const = 0;
  virtual bool term_eq(const TermP&, const TermP&) const = 0;

  // --- logical structure (providers are optional per flavour) ---
  virtual bool has_id() const { return true; }
  virtual bool has_unit() const { return true; }
  virtual bool has_sigma() const { return true; }
  virtual bool has_pi() const { return flavour() == Flavour::Id1SigmaPiExt; }

  virtual TypeP id_type(const ObjP& G, const TypeP& A, const TermP& a, const TermP& b) const = 0;
  virtual TermP refl_term(const ObjP& G, const TypeP& A, const TermP& a) const = 0;

  // Frobenius J over G: deltas[i] is a type over G.(x1:A).(x2:A).(q:Id).D<i,
  // motive over that context extended by all deltas, base over G.(x:A).D[diag],
  // endpoints/path/params over G. Returns a term of motive[a,b,p,params].
  struct JArgs {
    TypeP A;
    std::vector<TypeP> deltas;
    TypeP motive;
    TermP base;
    TermP lhs, rhs, path;
    std::vector<TermP> params;
  };
  virtual TermP j_term(const ObjP& G, const JArgs& args) const = 0;

  virtual TypeP unit_type(const ObjP& G) const = 0;
  virtual TermP tt_term(const ObjP& G) const = 0;
  virtual TypeP sigma_type(const ObjP& G, const TypeP& A, const TypeP& B) const = 0;  // B over G.A
  virtual TermP pair_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& a, const TermP& b) const = 0;
  virtual TermP fst_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const = 0;
  virtual TermP snd_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& p) const = 0;
  virtual TypeP pi_type(const ObjP& G, const TypeP& A, const TypeP& B) const {
    throw ModelError(name() + ": no Pi structure");
  }
  // body : Tm(G.A, B)
  virtual TermP lam_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& body) const {
    throw ModelError(name() + ": no Pi structure");
  }
  virtual TermP app_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& a) const {
    throw ModelError(name() + ": no Pi structure");
  }
  // h : Tm(G, Pi(A, Id(B, f x, g x))) -> Tm(G, Id(Pi(A,B), f, g))
  virtual TermP funext_term(const ObjP& G, const TypeP& A, const TypeP& B, const TermP& f, const TermP& g,
                            const TermP& h) const {
    throw ModelError(name() + ": no funext");
  }

  // --- validation ---
  virtual void validate_obj(const ObjP& G) const = 0;
  virtual void validate_type(const ObjP& G, const TypeP& A) const = 0;
  virtual void validate_term(const ObjP& G, const TypeP& A, const TermP& a) const = 0;
  virtual void validate_map(const MapP& f) const = 0;

  // --- budgeted enumeration (deterministic order) ---
  virtual std::vector<ObjP> enum_objects(const Budget& b) const = 0;
  virtual std::vector<TypeP> enum_types(const ObjP& G, const Budget& b) const = 0;
  virtual std::vector<TermP> enum_terms(const ObjP& G, const TypeP& A, const Budget& b) const = 0;
  virtual std::vector<MapP> enum_maps(const ObjP& X, const ObjP& Y, const Budget& b) const = 0;

  // --- display ---
  virtual std::string show_obj(const ObjP&) const = 0;
  virtual std::string show_map(const MapP&) const = 0;
  virtual std::string show_type(const ObjP& G, const TypeP&) const = 0;
  virtual std::string show_term(const ObjP& G, const TypeP& A, const TermP&) const = 0;
};

// A strict structured map of models. Preservation of the flagged logical
// structure is checked on generated instances by check_structured_functor.
class Functor;
using FunctorPtr = std::shared_ptr<const Functor>;

class Functor : public std::enable_shared_from_this<Functor> {
 public:
  struct Preserves {
    bool id = true, unit = true, sigma = true, pi = false;
  };

  virtual ~Functor() = default;
  virtual std::string name() const = 0;
  virtual ModelPtr source() const = 0;
  virtual ModelPtr target() const = 0;
  virtual Preserves preserves() const {
    Preserves p;
    p.pi = source()->flavour() == Flavour::Id1SigmaPiExt && target()->flavour() == Flavour::Id1SigmaPiExt;
    return p;
  }

  virtual ObjP on_obj(const ObjP& G) const = 0;
  virtual MapP on_map(const MapP& f) const = 0;
  virtual TypeP on_type(const ObjP& G, const TypeP& A) const = 0;
  virtual TermP on_term(const ObjP& G, const TypeP& A, const TermP& a) const = 0;
};

// Composite functor G . F (apply F first).
class ComposedFunctor final : public Functor {
 public:
  ComposedFunctor(FunctorPtr after, FunctorPtr first) : g_(std::move(after)), f_(std::move(first)) {}
  std::string name() const override { return g_->name() + " . " + f_->name(); }
  ModelPtr source() const override { return f_->source(); }
  ModelPtr target() const override { return g_->target(); }
  ObjP on_obj(const ObjP& G) const override { return g_->on_obj(f_->on_obj(G)); }
  MapP on_map(const MapP& m) const override { return g_->on_map(f_->on_map(m)); }
  TypeP on_type(const ObjP& G, const TypeP& A) const override { return g_->on_type(f_->on_obj(G), f_->on_type(G, A)); }
  TermP on_term(const ObjP& G, const TypeP& A, const TermP& a) const override {
    return g_->on_term(f_->on_obj(G), f_->on_type(G, A), f_->on_term(G, A, a));
  }

 private:
  FunctorPtr g_, f_;
};

class IdentityFunctor final : public Functor {
 public:
  explicit IdentityFunctor(ModelPtr m) : m_(std::move(m)) {}
  std::string name() const override { return "id_" + m_->name(); }
  ModelPtr source() const override { return m_; }
  ModelPtr target() const override { return m_; }
  ObjP on_obj(const ObjP& G) const override { return G; }
  MapP on_map(const MapP& f) const override { return f; }
  TypeP on_type(const ObjP&, const TypeP& A) const override { return A; }
  TermP on_term(const ObjP&, const TypeP&, const TermP& a) const override { return a; }

 private:
  ModelPtr m_;
};

template <typename T, typename P>
const T& cast_data(const P& p, const char* what) {
  const T* d = dynamic_cast<const T*>(p.get());
  if (!d) throw ModelError(std::string("value of unexpected kind passed as ") + what);
  return *d;
}

}  // namespace ctxcat

#endif  // CTXCAT_MODEL_HPP
