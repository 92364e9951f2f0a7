// Budgeted verification of the contextual-category / CwA laws on a model,
// and of strict structure preservation by a functor. Every law gets a
// pass/fail line; failures carry a counterexample trace.

#ifndef CTXCAT_LAWS_HPP
#define CTXCAT_LAWS_HPP

#include <functional>
#include <string>
#include <vector>

#include "ctxcat/model.hpp"
#include "ctxcat/report.hpp"

namespace ctxcat {

namespace detail {

inline std::pair<bool, std::string> law_ok() { return {true, {}}; }
inline std::pair<bool, std::string> law_fail(std::string m) { return {false, std::move(m)}; }

inline void guarded(Report& r, const std::string& id, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    auto [ok, trace] = f();
    r.add(id, ok, ok ? "" : trace);
  } catch (const std::exception& e) {
    r.add(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace detail

// Enumerated fragment shared by the law checks.
struct Fragment {
  std::vector<ObjP> objects;
  // types[i] are the enumerated types over objects[i]
  std::vector<std::vector<TypeP>> types;

  static Fragment of(const Model& m, const Budget& b) {
    Fragment f;
    f.objects = m.enum_objects(b);
    for (auto& G : f.objects) f.types.push_back(m.enum_types(G, b));
    return f;
  }
};

inline Report law_suite(const ModelPtr& m, const Budget& b) {
  Report r;
  r.suite = "cwa-laws(" + m->name() + ")";
  Fragment frag = Fragment::of(*m, b);
  const size_t nobj = frag.objects.size();
  if (nobj >= static_cast<size_t>(b.objects_cap)) r.complete = false;

  detail::guarded(r, "terminal/valid", [&] {
    m->validate_obj(m->terminal());
    return detail::law_ok();
  });

  if (m->graded()) {
    detail::guarded(r, "grading/terminal-degree-0", [&] {
      return std::pair<bool,std::string>{m->degree(m->terminal()) == 0, "degree(1) != 0"};
    });
    detail::guarded(r, "grading/unique-degree-0", [&] {
      for (auto& G : frag.objects)
        if (m->degree(G) == 0 && !m->obj_eq(G, m->terminal()))
          return detail::law_fail("extra degree-0 object " + m->show_obj(G));
      return detail::law_ok();
    });
  }

  detail::guarded(r, "terminal/bang-unique", [&] {
    for (auto& G : frag.objects) {
      MapP bg = m->bang(G);
      m->validate_map(bg);
      if (!m->obj_eq(m->cod(bg), m->terminal())) return detail::law_fail("bang codomain is not terminal");
      for (auto& h : m->enum_maps(G, m->terminal(), b))
        if (!m->map_eq(h, bg)) return detail::law_fail("two maps " + m->show_obj(G) + " -> 1 differ");
    }
    return detail::law_ok();
  });

  detail::guarded(r, "category/identity-unit", [&] {
    for (size_t i = 0; i < nobj && i < 4; ++i)
      for (size_t j = 0; j < nobj && j < 4; ++j)
        for (auto& f : m->enum_maps(frag.objects[i], frag.objects[j], b)) {
          if (!m->map_eq(m->comp(f, m->id_map(frag.objects[i])), f))
            return detail::law_fail("f . id != f for " + m->show_map(f));
          if (!m->map_eq(m->comp(m->id_map(frag.objects[j]), f), f))
            return detail::law_fail("id . f != f for " + m->show_map(f));
        }
    return detail::law_ok();
  });

  detail::guarded(r, "ext/ft-and-degree", [&] {
    for (size_t i = 0; i < nobj; ++i)
      for (auto& A : frag.types[i]) {
        ObjP GA = m->ext(frag.objects[i], A);
        m->validate_obj(GA);
        if (!m->obj_eq(m->ft_obj(GA), frag.objects[i]))
          return detail::law_fail("ft(G.A) != G at " + m->show_type(frag.objects[i], A));
        if (m->graded() && m->degree(GA) != m->degree(frag.objects[i]) + 1)
          return detail::law_fail("degree(G.A) != degree(G)+1");
      }
    return detail::law_ok();
  });

  detail::guarded(r, "ext/proj-codomain", [&] {
    for (size_t i = 0; i < nobj; ++i)
      for (auto& A : frag.types[i]) {
        MapP p = m->proj(frag.objects[i], A);
        m->validate_map(p);
        if (!m->obj_eq(m->cod(p), frag.objects[i])) return detail::law_fail("cod(p_A) != ft(G.A)");
        if (!m->obj_eq(m->dom(p), m->ext(frag.objects[i], A))) return detail::law_fail("dom(p_A) != G.A");
      }
    return detail::law_ok();
  });

  detail::guarded(r, "pullback/strict-identity", [&] {
    for (size_t i = 0; i < nobj; ++i)
      for (auto& A : frag.types[i]) {
        const ObjP& G = frag.objects[i];
        TypeP idA = m->reindex(m->id_map(G), A);
        if (!m->type_eq(idA, A))
          return detail::law_fail("id*A != A at " + m->show_type(G, A));
        if (!m->map_eq(m->connecting(m->id_map(G), A), m->id_map(m->ext(G, A))))
          return detail::law_fail("id.A != id_{G.A} at " + m->show_type(G, A));
      }
    return detail::law_ok();
  });

  detail::guarded(r, "pullback/strict-composition", [&] {
    int done = 0;
    for (size_t i = 0; i < nobj; ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i]) {
        for (size_t jj = 0; jj < nobj && done < 60; ++jj) {
          for (auto& f : m->enum_maps(frag.objects[jj], G, b)) {
            for (size_t kk = 0; kk < nobj && done < 60; ++kk) {
              for (auto& g : m->enum_maps(frag.objects[kk], frag.objects[jj], b)) {
                ++done;
                TypeP lhs = m->reindex(m->comp(f, g), A);
                TypeP rhs = m->reindex(g, m->reindex(f, A));
                if (!m->type_eq(lhs, rhs))
                  return detail::law_fail("(fg)*A != g*f*A with f=" + m->show_map(f) + ", g=" + m->show_map(g));
                MapP clhs = m->connecting(m->comp(f, g), A);
                MapP crhs = m->comp(m->connecting(f, A), m->connecting(g, m->reindex(f, A)));
                if (!m->map_eq(clhs, crhs))
                  return detail::law_fail("fg.A != f.A . g.f*A with f=" + m->show_map(f) + ", g=" + m->show_map(g));
              }
            }
          }
        }
      }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "pullback/square-commutes", [&] {
    for (size_t i = 0; i < nobj; ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i])
        for (size_t jj = 0; jj < nobj; ++jj)
          for (auto& f : m->enum_maps(frag.objects[jj], G, b)) {
            TypeP fA = m->reindex(f, A);
            MapP lhs = m->comp(f, m->proj(frag.objects[jj], fA));
            MapP rhs = m->comp(m->proj(G, A), m->connecting(f, A));
            if (!m->map_eq(lhs, rhs))
              return detail::law_fail("f . p_{f*A} != p_A . f.A with f=" + m->show_map(f));
          }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "pullback/universal-property", [&] {
    int done = 0;
    for (size_t i = 0; i < nobj; ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i]) {
        for (size_t jj = 0; jj < nobj && done < 40; ++jj) {
          for (auto& f : m->enum_maps(frag.objects[jj], G, b)) {
            const ObjP& D = frag.objects[jj];
            TypeP fA = m->reindex(f, A);
            for (size_t kk = 0; kk < nobj && done < 40; ++kk) {
              const ObjP& T = frag.objects[kk];
              for (auto& u : m->enum_maps(T, D, b)) {
                // test cones: v := f.A . <u, t> for enumerated terms t of u*f*A
                for (auto& t : m->enum_terms(T, m->reindex(u, fA), b)) {
                  ++done;
                  MapP w = m->ext_map(u, fA, t);
                  MapP v = m->comp(m->connecting(f, A), w);
                  // factorization through the square:
                  if (!m->map_eq(m->comp(f, m->comp(m->proj(D, fA), w)), m->comp(m->proj(G, A), v)))
                    return detail::law_fail("cone does not commute");
                  if (!m->map_eq(m->comp(m->proj(D, fA), w), u)) return detail::law_fail("p . <u,t> != u");
                  // uniqueness among enumerated maps with the same projections
                  for (auto& w2 : m->enum_maps(T, m->ext(D, fA), b)) {
                    bool same_u = m->map_eq(m->comp(m->proj(D, fA), w2), u);
                    bool same_v = m->map_eq(m->comp(m->connecting(f, A), w2), v);
                    if (same_u && same_v && !m->map_eq(w2, w))
                      return detail::law_fail("pullback factorization not unique");
                  }
                }
              }
            }
          }
        }
      }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "terms/section-laws", [&] {
    for (size_t i = 0; i < nobj; ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i])
        for (auto& a : m->enum_terms(G, A, b)) {
          MapP s = m->section_map(G, A, a);
          m->validate_map(s);
          if (!m->map_eq(m->comp(m->proj(G, A), s), m->id_map(G)))
            return detail::law_fail("p_A . <id,a> != id at " + m->show_term(G, A, a));
          TermP back = m->subst_term(s, m->var_term(G, A));
          if (!m->term_eq(back, a)) return detail::law_fail("q[<id,a>] != a at " + m->show_term(G, A, a));
        }
    }
    return detail::law_ok();
  });

  if (m->has_id()) {
    detail::guarded(r, "logic/id-stability", [&] {
      for (size_t i = 0; i < nobj; ++i) {
        const ObjP& G = frag.objects[i];
        for (auto& A : frag.types[i]) {
          auto terms = m->enum_terms(G, A, b);
          if (terms.empty()) continue;
          const TermP& a = terms.front();
          TypeP IdA = m->id_type(G, A, a, a);
          m->validate_type(G, IdA);
          m->validate_term(G, IdA, m->refl_term(G, A, a));
          for (size_t jj = 0; jj < nobj; ++jj)
            for (auto& f : m->enum_maps(frag.objects[jj], G, b)) {
              TypeP lhs = m->reindex(f, IdA);
              TypeP rhs = m->id_type(frag.objects[jj], m->reindex(f, A), m->subst_term(f, a), m->subst_term(f, a));
              if (!m->type_eq(lhs, rhs)) return detail::law_fail("f*(Id_A(a,a)) != Id_{f*A}(f*a,f*a)");
            }
        }
      }
      return detail::law_ok();
    });
  }

  if (m->has_sigma()) {
    detail::guarded(r, "logic/sigma-stability", [&] {
      for (size_t i = 0; i < nobj && i < 4; ++i) {
        const ObjP& G = frag.objects[i];
        for (auto& A : frag.types[i]) {
          ObjP GA = m->ext(G, A);
          auto btys = m->enum_types(GA, b);
          if (btys.empty()) continue;
          const TypeP& B = btys.front();
          TypeP S = m->sigma_type(G, A, B);
          m->validate_type(G, S);
          for (size_t jj = 0; jj < nobj && jj < 4; ++jj)
            for (auto& f : m->enum_maps(frag.objects[jj], G, b)) {
              TypeP lhs = m->reindex(f, S);
              TypeP rhs = m->sigma_type(frag.objects[jj], m->reindex(f, A), m->reindex(m->connecting(f, A), B));
              if (!m->type_eq(lhs, rhs)) return detail::law_fail("f*(Sigma(A,B)) != Sigma(f*A, f.A*B)");
            }
        }
      }
      return detail::law_ok();
    });
  }

  if (m->has_unit()) {
    detail::guarded(r, "logic/unit-stability", [&] {
      for (size_t i = 0; i < nobj && i < 4; ++i) {
        const ObjP& G = frag.objects[i];
        TypeP U = m->unit_type(G);
        m->validate_type(G, U);
        m->validate_term(G, U, m->tt_term(G));
        for (size_t jj = 0; jj < nobj && jj < 4; ++jj)
          for (auto& f : m->enum_maps(frag.objects[jj], G, b))
            if (!m->type_eq(m->reindex(f, U), m->unit_type(frag.objects[jj])))
              return detail::law_fail("f*1 != 1");
      }
      return detail::law_ok();
    });
  }

  return r;
}

inline Report check_structured_functor(const FunctorPtr& F, const Budget& b) {
  Report r;
  r.suite = "functor(" + F->name() + ")";
  ModelPtr S = F->source();
  ModelPtr T = F->target();
  Fragment frag = Fragment::of(*S, b);
  auto flags = F->preserves();

  detail::guarded(r, "functor/terminal", [&] {
    return std::pair<bool, std::string>{T->obj_eq(F->on_obj(S->terminal()), T->terminal()), "F(1) != 1"};
  });

  if (S->graded() && T->graded()) {
    detail::guarded(r, "functor/grading", [&] {
      for (auto& G : frag.objects)
        if (T->degree(F->on_obj(G)) != S->degree(G))
          return detail::law_fail("degree not preserved at " + S->show_obj(G));
      return detail::law_ok();
    });
  }

  detail::guarded(r, "functor/ext-ft-proj", [&] {
    for (size_t i = 0; i < frag.objects.size(); ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i]) {
        ObjP FGA = F->on_obj(S->ext(G, A));
        ObjP FG_FA = T->ext(F->on_obj(G), F->on_type(G, A));
        if (!T->obj_eq(FGA, FG_FA)) return detail::law_fail("F(G.A) != F(G).F(A) at " + S->show_type(G, A));
        if (!T->map_eq(F->on_map(S->proj(G, A)), T->proj(F->on_obj(G), F->on_type(G, A))))
          return detail::law_fail("F(p_A) != p_{FA} at " + S->show_type(G, A));
      }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "functor/category", [&] {
    int done = 0;
    for (size_t i = 0; i < frag.objects.size() && done < 40; ++i) {
      if (!T->map_eq(F->on_map(S->id_map(frag.objects[i])), T->id_map(F->on_obj(frag.objects[i]))))
        return detail::law_fail("F(id) != id");
      for (size_t j = 0; j < frag.objects.size() && done < 40; ++j)
        for (auto& f : S->enum_maps(frag.objects[i], frag.objects[j], b)) {
          ++done;
          MapP Ff = F->on_map(f);
          S->validate_map(f);
          T->validate_map(Ff);
          if (!T->obj_eq(T->dom(Ff), F->on_obj(frag.objects[i]))) return detail::law_fail("dom(Ff) mismatch");
          if (!T->obj_eq(T->cod(Ff), F->on_obj(frag.objects[j]))) return detail::law_fail("cod(Ff) mismatch");
          for (size_t kk = 0; kk < frag.objects.size() && kk < 3; ++kk)
            for (auto& g : S->enum_maps(frag.objects[j], frag.objects[kk], b))
              if (!T->map_eq(F->on_map(S->comp(g, f)), T->comp(F->on_map(g), Ff)))
                return detail::law_fail("F(g.f) != F(g).F(f)");
        }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "functor/pullbacks", [&] {
    for (size_t i = 0; i < frag.objects.size(); ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i])
        for (size_t j = 0; j < frag.objects.size(); ++j)
          for (auto& f : S->enum_maps(frag.objects[j], G, b)) {
            TypeP lhs = F->on_type(frag.objects[j], S->reindex(f, A));
            TypeP rhs = T->reindex(F->on_map(f), F->on_type(G, A));
            if (!T->type_eq(lhs, rhs)) return detail::law_fail("F(f*A) != (Ff)*(FA)");
            if (!T->map_eq(F->on_map(S->connecting(f, A)), T->connecting(F->on_map(f), F->on_type(G, A))))
              return detail::law_fail("F(f.A) != Ff.FA");
          }
    }
    return detail::law_ok();
  });

  detail::guarded(r, "functor/terms", [&] {
    for (size_t i = 0; i < frag.objects.size(); ++i) {
      const ObjP& G = frag.objects[i];
      for (auto& A : frag.types[i]) {
        TypeP FA = F->on_type(G, A);
        ObjP FG = F->on_obj(G);
        // tautological term
        TermP lhs = F->on_term(S->ext(G, A), S->reindex(S->proj(G, A), A), S->var_term(G, A));
        TermP rhs = T->var_term(FG, FA);
        if (!T->term_eq(lhs, rhs)) return detail::law_fail("F(q_A) != q_{FA}");
        for (auto& a : S->enum_terms(G, A, b)) {
          TermP Fa = F->on_term(G, A, a);
          T->validate_term(FG, FA, Fa);
          if (!T->map_eq(F->on_map(S->section_map(G, A, a)), T->section_map(FG, FA, Fa)))
            return detail::law_fail("F(<id,a>) != <id,Fa>");
        }
      }
    }
    return detail::law_ok();
  });

  if (flags.id && S->has_id() && T->has_id()) {
    detail::guarded(r, "functor/id-structure", [&] {
      for (size_t i = 0; i < frag.objects.size(); ++i) {
        const ObjP& G = frag.objects[i];
        for (auto& A : frag.types[i]) {
          auto terms = S->enum_terms(G, A, b);
          for (auto& a : terms)
            for (auto& bb : terms) {
              TypeP lhs = F->on_type(G, S->id_type(G, A, a, bb));
              TypeP rhs = T->id_type(F->on_obj(G), F->on_type(G, A), F->on_term(G, A, a), F->on_term(G, A, bb));
              if (!T->type_eq(lhs, rhs)) return detail::law_fail("F(Id) != Id(F)");
            }
          if (!terms.empty()) {
            const TermP& a = terms.front();
            TermP lhs = F->on_term(G, S->id_type(G, A, a, a), S->refl_term(G, A, a));
            TermP rhs = T->refl_term(F->on_obj(G), F->on_type(G, A), F->on_term(G, A, a));
            if (!T->term_eq(lhs, rhs)) return detail::law_fail("F(refl) != refl(F)");
          }
        }
      }
      return detail::law_ok();
    });
  }

  if (flags.unit && S->has_unit() && T->has_unit()) {
    detail::guarded(r, "functor/unit-structure", [&] {
      for (auto& G : frag.objects) {
        if (!T->type_eq(F->on_type(G, S->unit_type(G)), T->unit_type(F->on_obj(G))))
          return detail::law_fail("F(1) != 1 (types)");
        if (!T->term_eq(F->on_term(G, S->unit_type(G), S->tt_term(G)), T->tt_term(F->on_obj(G))))
          return detail::law_fail("F(tt) != tt");
      }
      return detail::law_ok();
    });
  }

  if (flags.sigma && S->has_sigma() && T->has_sigma()) {
    detail::guarded(r, "functor/sigma-structure", [&] {
      for (size_t i = 0; i < frag.objects.size(); ++i) {
        const ObjP& G = frag.objects[i];
        for (auto& A : frag.types[i]) {
          ObjP GA = S->ext(G, A);
          auto btys = S->enum_types(GA, b);
          if (btys.empty()) continue;
          const TypeP& B = btys.front();
          TypeP lhs = F->on_type(G, S->sigma_type(G, A, B));
          TypeP rhs = T->sigma_type(F->on_obj(G), F->on_type(G, A), F->on_type(GA, B));
          if (!T->type_eq(lhs, rhs)) return detail::law_fail("F(Sigma) != Sigma(F)");
        }
      }
      return detail::law_ok();
    });
  }

  if (flags.pi && S->has_pi() && T->has_pi()) {
    detail::guarded(r, "functor/pi-structure", [&] {
      for (size_t i = 0; i < frag.objects.size(); ++i) {
        const ObjP& G = frag.objects[i];
        for (auto& A : frag.types[i]) {
          ObjP GA = S->ext(G, A);
          auto btys = S->enum_types(GA, b);
          if (btys.empty()) continue;
          const TypeP& B = btys.front();
          TypeP lhs = F->on_type(G, S->pi_type(G, A, B));
          TypeP rhs = T->pi_type(F->on_obj(G), F->on_type(G, A), F->on_type(GA, B));
          if (!T->type_eq(lhs, rhs)) return detail::law_fail("F(Pi) != Pi(F)");
        }
      }
      return detail::law_ok();
    });
  }

  return r;
}

}  // namespace ctxcat

#endif  // CTXCAT_LAWS_HPP
