#include <catch2/catch_amalgamated.hpp>

#include "ctxcat/genfunctor.hpp"
#include "ctxcat/laws.hpp"
#include "ctxcat/presentation.hpp"
#include "ctxcat/slice.hpp"

using namespace ctxcat;

namespace {
SynModelPtr one_type_model() {
  Presentation p = parse_presentation("type A\nterm a : A\n");
  return free_model(p, Flavour::Id1Sigma, "C");
}
}  // namespace

TEST_CASE("fibrant slice passes the law suite") {
  auto C = one_type_model();
  ObjP GA = C->ext(C->terminal(), C->ty(Telescope{}, sym("A")));
  auto S = fibrant_slice(std::static_pointer_cast<const Model>(C), GA);
  Report r = law_suite(S, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());
}

TEST_CASE("core of a contextual model is isomorphic to it") {
  auto C = one_type_model();
  auto K = core(std::static_pointer_cast<const Model>(C));
  Report r = law_suite(K, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());

  // The inclusion is structured, and factoring it through the core gives a
  // functor whose composite with the inclusion is the identity on the
  // enumerated fragment.
  auto incl = std::make_shared<CoreInclusion>(K);
  Report ri = check_structured_functor(incl, Budget::of(2));
  INFO(ri.to_text());
  CHECK(ri.ok());

  auto idC = std::make_shared<IdentityFunctor>(std::static_pointer_cast<const Model>(C));
  auto bar = core_factor(std::static_pointer_cast<const Functor>(idC));  // C -> core(C)
  Report rb = check_structured_functor(bar, Budget::of(2));
  INFO(rb.to_text());
  CHECK(rb.ok());

  Budget bud = Budget::of(2);
  auto comp = std::make_shared<ComposedFunctor>(incl, bar);
  for (auto& G : C->enum_objects(bud)) CHECK(C->obj_eq(comp->on_obj(G), G));
}

TEST_CASE("core_factor of the inclusion is the identity on the core") {
  auto C = one_type_model();
  auto K = core(std::static_pointer_cast<const Model>(C));
  auto incl = std::make_shared<CoreInclusion>(K);
  auto back = core_factor(std::static_pointer_cast<const Functor>(incl));  // core(C) -> core(C)
  Budget bud = Budget::of(2);
  auto KM = std::static_pointer_cast<const Model>(K);
  for (auto& G : KM->enum_objects(bud)) {
    CHECK(KM->obj_eq(back->on_obj(G), G));
    for (auto& A : KM->enum_types(G, bud)) CHECK(KM->type_eq(back->on_type(G, A), A));
  }
}

TEST_CASE("slice of slice agrees with the slice at the extension") {
  auto C0 = one_type_model();
  auto C = std::static_pointer_cast<const Model>(C0);
  TypeP A = C0->ty(Telescope{}, sym("A"));
  ObjP GA = C->ext(C->terminal(), A);
  auto S1 = fibrant_slice(C, GA);  // C//\Gamma with \Gamma = 1.A

  // Extend in the slice by another copy of A.
  TypeP A_over = S1->wrap_type(C0->ty(SyntacticModel::tele(GA), sym("A")));
  ObjP D = S1->ext(S1->terminal(), A_over);
  auto S2 = fibrant_slice(std::static_pointer_cast<const Model>(S1), D);  // (C//G)//(D)
  auto S12 = fibrant_slice(C, S1->flat(SliceModel::objd(D).ext));         // C//(G.D)

  Report r2 = law_suite(S2, Budget::of(2));
  INFO(r2.to_text());
  CHECK(r2.ok());

  // Enumerated objects agree through the evident unwrap.
  Budget bud = Budget::of(2);
  auto o2 = std::static_pointer_cast<const Model>(S2)->enum_objects(bud);
  auto o12 = std::static_pointer_cast<const Model>(S12)->enum_objects(bud);
  REQUIRE(o2.size() == o12.size());
  for (size_t i = 0; i < o2.size(); ++i) {
    const auto& e2 = SliceModel::objd(o2[i]).ext;
    std::vector<TypeP> unwrapped;
    for (auto& t : e2) unwrapped.push_back(SliceModel::base_type(t));
    const auto& e12 = SliceModel::objd(o12[i]).ext;
    REQUIRE(unwrapped.size() == e12.size());
    for (size_t j = 0; j < e12.size(); ++j) CHECK(C->type_eq(unwrapped[j], e12[j]));
  }
}

TEST_CASE("fibrant slice of the free model sees the pulled-back generator") {
  auto C0 = one_type_model();
  auto C = std::static_pointer_cast<const Model>(C0);
  TypeP A = C0->ty(Telescope{}, sym("A"));
  ObjP GA = C->ext(C->terminal(), A);
  auto S = fibrant_slice(C, GA);
  // Ty over the slice terminal contains p_A^* A.
  auto types = std::static_pointer_cast<const Model>(S)->enum_types(S->terminal(), Budget::of(2));
  bool found = false;
  TypeP pulled = S->wrap_type(C0->ty(SyntacticModel::tele(GA), sym("A")));
  for (auto& T : types) found = found || S->type_eq(T, pulled);
  CHECK(found);
}

TEST_CASE("reindex_slice is functorial and matches weakening") {
  auto C0 = one_type_model();
  auto C = std::static_pointer_cast<const Model>(C0);
  TypeP A = C0->ty(Telescope{}, sym("A"));
  ObjP GA = C->ext(C->terminal(), A);
  MapP pA = C->proj(C->terminal(), A);

  SECTION("identity reindexing is the identity functor") {
    auto F = reindex_slice(C, C->id_map(GA));
    Budget bud = Budget::of(2);
    auto S = fibrant_slice(C, GA);
    auto SM = std::static_pointer_cast<const Model>(S);
    for (auto& G : SM->enum_objects(bud)) {
      CHECK(SM->obj_eq(F->on_obj(G), G));
      for (auto& T : SM->enum_types(G, bud)) CHECK(SM->type_eq(F->on_type(G, T), T));
    }
  }

  SECTION("reindexing along p_A weakens") {
    auto F = reindex_slice(C, pA);  // C//1 -> C//1.A
    Report r = check_structured_functor(F, Budget::of(2));
    INFO(r.to_text());
    CHECK(r.ok());
    // The slice type A over the core goes to the weakened A over 1.A.
    auto S0 = fibrant_slice(C, C->terminal());
    TypeP At = S0->wrap_type(A);
    TypeP img = F->on_type(S0->terminal(), At);
    TypeP expected = C0->ty(SyntacticModel::tele(GA), sym("A"));
    CHECK(C->type_eq(SliceModel::base_type(img), expected));
  }

  SECTION("composition law on random small maps") {
    Budget bud = Budget::of(2);
    auto one = C->terminal();
    for (auto& f : C->enum_maps(GA, GA, bud)) {
      auto Ff = reindex_slice(C, f);
      for (auto& g : C->enum_maps(one, GA, bud)) {
        auto Fg = reindex_slice(C, g);
        auto Ffg = reindex_slice(C, C->comp(f, g));
        auto S = fibrant_slice(C, GA);
        auto SM = std::static_pointer_cast<const Model>(S);
        for (auto& G : SM->enum_objects(bud)) {
          ObjP lhs = Fg->on_obj(Ff->on_obj(G));
          ObjP rhs = Ffg->on_obj(G);
          auto S0m = fibrant_slice(C, one);
          CHECK(std::static_pointer_cast<const Model>(S0m)->obj_eq(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("slice functor preserves structure") {
  auto C0 = one_type_model();
  Presentation q = parse_presentation("type A\nterm a : A\ntype B\n");
  auto D0 = free_model(q, Flavour::Id1Sigma, "D");
  auto F = rename_functor(C0, D0, "incl");
  TypeP A = C0->ty(Telescope{}, sym("A"));
  ObjP GA = C0->ext(C0->terminal(), A);
  auto SF = slice_functor(F, GA);
  Report r = check_structured_functor(SF, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());
}
