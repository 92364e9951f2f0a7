#include <catch2/catch_amalgamated.hpp>

#include "ctxcat/genfunctor.hpp"
#include "ctxcat/laws.hpp"
#include "ctxcat/presentation.hpp"
#include "support/forwarding_model.hpp"

using namespace ctxcat;

TEST_CASE("law suite on the terminal-only model") {
  Presentation p = parse_presentation("");
  auto m = free_model(p, Flavour::Id1Sigma, "empty");
  Report r = law_suite(m, Budget::of(3));
  INFO(r.to_text());
  CHECK(r.ok());
}

TEST_CASE("law suite on the free model with one type") {
  Presentation p = parse_presentation("type A\n");
  auto m = free_model(p, Flavour::Id1Sigma, "one-type");
  Report r = law_suite(m, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());

  // id*A = A and ft(1.A) = 1, explicitly.
  ObjP one = m->terminal();
  TypeP A = m->ty(Telescope{}, sym("A"));
  CHECK(m->type_eq(m->reindex(m->id_map(one), A), A));
  CHECK(m->obj_eq(m->ft_obj(m->ext(one, A)), one));
}

TEST_CASE("law suite over richer presentations") {
  const char* sources[] = {
      "type A\nterm a : A\n",
      "type A\ntype A2\nequiv w : A ~ A2\n",
      "type A\nidelem e : Id(A, a, a2)\n",
  };
  for (auto* src : sources) {
    Presentation p = parse_presentation(src);
    auto m = free_model(p, Flavour::Id1Sigma);
    Report r = law_suite(m, Budget::of(2));
    INFO(src);
    INFO(r.to_text());
    CHECK(r.ok());
  }
}

TEST_CASE("corrupted connecting map fails the law suite with a trace") {
  Presentation p = parse_presentation("type A\n");
  auto inner = free_model(p, Flavour::Id1Sigma);
  auto bad = std::make_shared<testing::CorruptedConnecting>(inner);
  Report r = law_suite(bad, Budget::of(2));
  CHECK_FALSE(r.ok());
  bool trace_found = false;
  for (auto& c : r.checks)
    if (!c.pass && !c.trace.empty()) trace_found = true;
  CHECK(trace_found);
}

TEST_CASE("presentation parsing") {
  SECTION("empty context statement") {
    Presentation p = parse_presentation("ctx G0 ()\n");
    REQUIRE(p.cells.size() == 1);
    CHECK(p.cells[0].kind == CellKind::Context);
    CHECK(p.context("G0").size() == 0);
  }

  SECTION("three cells, cofibrant") {
    Presentation p = parse_presentation("ctx G ()\ntype A over G\nterm a : A\n");
    REQUIRE(p.cells.size() == 3);
    CHECK(p.cofibrant());
  }

  SECTION("dangling context reference") {
    CHECK_THROWS_AS(parse_presentation("type A over G\n"), ParseError);
  }

  SECTION("fresh generator entries in contexts") {
    Presentation p = parse_presentation("ctx G (x : X, y : Y)\ntype B over G\n");
    const Telescope& t = p.context("G");
    REQUIRE(t.size() == 2);
    CHECK(expr_eq(t.entries[0].second, sym("X")));
    CHECK(expr_eq(t.entries[1].second, sym("Y", {var(0)})));
    // B's parameters are the whole context
    CHECK(p.signature()->get("B").params.size() == 2);
  }

  SECTION("syntax error with location") {
    try {
      parse_presentation("type A\nterm b :\n");
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }

  SECTION("out-of-order dependency") {
    CHECK_THROWS_AS(parse_presentation("term a : A\ntype A\n"), ParseError);
  }
}

TEST_CASE("parse . print = identity") {
  const char* src =
      "base W\n"
      "ctx G (x : X, y : Y)\n"
      "ctx H over W (z : Z)\n"
      "type A over G\n"
      "type B over G (w : A(x, y))\n"
      "term a : A(x, y) over G\n"
      "equiv w : A(x, y) ~ Unit over G\n"
      "idelem e : Id(A(x, y), a(x, y), a2) over G\n";
  Presentation p1 = parse_presentation(src);
  std::string printed = p1.print();
  Presentation p2 = parse_presentation(printed);
  REQUIRE(p1.cells.size() == p2.cells.size());
  for (size_t i = 0; i < p1.cells.size(); ++i) {
    INFO("cell " << i << " of " << printed);
    CHECK(cell_eq(p1.cells[i], p2.cells[i]));
  }
  CHECK(printed == p2.print());
}

TEST_CASE("free model on one type has Id_A over 1.A.A") {
  Presentation p = parse_presentation("type A\n");
  auto m = free_model(p, Flavour::Id1Sigma);
  Telescope t;
  t.push("x", sym("A"));
  t.push("y", sym("A"));
  ObjP G = m->obj(t);
  TypeP IdA = m->ty(t, id_ty(sym("A"), var(1), var(0)));
  m->validate_type(G, IdA);
  SUCCEED();
}

TEST_CASE("equiv cell produces the five Def-2.7-typed generators") {
  Presentation p = parse_presentation("type A\ntype A2\nequiv w : A ~ A2\n");
  auto m = free_model(p, Flavour::Id1Sigma);
  const Signature& sig = *p.signature();
  const Kernel& k = m->kernel();

  // w_f : (x:A) -> A2 ; w_gl, w_gr : (y:A2) -> A ; w_al : Id(A2, f(gl y), y) ; w_ar : Id(A, gr(f x), x)
  for (auto nm : {"w_f", "w_gl", "w_gr", "w_al", "w_ar"}) REQUIRE(sig.find(nm) != nullptr);
  Telescope ctxA;
  ctxA.push("x", sym("A"));
  Telescope ctxB;
  ctxB.push("y", sym("A2"));
  CHECK(k.checks(ctxA, sym("w_f", {var(0)}), sym("A2")));
  CHECK(k.checks(ctxB, sym("w_gl", {var(0)}), sym("A")));
  CHECK(k.checks(ctxB, sym("w_al", {var(0)}),
                 id_ty(sym("A2"), sym("w_f", {sym("w_gl", {var(0)})}), var(0))));
  CHECK(k.checks(ctxA, sym("w_ar", {var(0)}),
                 id_ty(sym("A"), sym("w_gr", {sym("w_f", {var(0)})}), var(0))));
}

TEST_CASE("idelem with one existing endpoint") {
  Presentation p = parse_presentation("type A\nterm a : A\nidelem e : Id(A, a, a2)\n");
  auto m = free_model(p, Flavour::Id1Sigma);
  CHECK(p.signature()->find("a2") != nullptr);
  CHECK(p.signature()->find("e") != nullptr);
  const GenDecl& e = p.signature()->get("e");
  CHECK(expr_eq(e.result, id_ty(sym("A"), sym("a"), sym("a2"))));
}

TEST_CASE("identity and renaming functors pass the preservation checks") {
  Presentation p = parse_presentation("type A\nterm a : A\n");
  auto m = free_model(p, Flavour::Id1Sigma);

  SECTION("identity functor") {
    auto F = std::make_shared<IdentityFunctor>(m);
    Report r = check_structured_functor(F, Budget::of(2));
    INFO(r.to_text());
    CHECK(r.ok());
  }

  SECTION("inclusion into a larger presentation") {
    Presentation q = parse_presentation("type A\nterm a : A\ntype B\n");
    auto n = free_model(q, Flavour::Id1Sigma);
    auto F = rename_functor(m, n, "incl");
    Report r = check_structured_functor(F, Budget::of(2));
    INFO(r.to_text());
    CHECK(r.ok());
  }
}

TEST_CASE("universal property: assignment extends to a unique structured functor") {
  Presentation p = parse_presentation("type A\n");
  auto src = free_model(p, Flavour::Id1Sigma);
  Presentation q = parse_presentation("type B\nterm b0 : B\n");
  auto dst = free_model(q, Flavour::Id1Sigma);

  // A |-> Unit
  GenFunctorBuilder b(src, dst, "A->Unit");
  b.assign_type("A", dst->unit_type(dst->terminal()));
  auto F = b.build();
  Report r = check_structured_functor(F, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());

  // Uniqueness: a second extension of the same assignment agrees on the
  // enumerated fragment.
  GenFunctorBuilder b2(src, dst, "A->Unit'");
  b2.assign_type("A", dst->unit_type(dst->terminal()));
  auto F2 = b2.build();
  Budget bud = Budget::of(2);
  for (auto& G : src->enum_objects(bud)) {
    CHECK(dst->obj_eq(F->on_obj(G), F2->on_obj(G)));
    for (auto& A : src->enum_types(G, bud)) {
      CHECK(dst->type_eq(F->on_type(G, A), F2->on_type(G, A)));
      for (auto& a : src->enum_terms(G, A, bud)) CHECK(dst->term_eq(F->on_term(G, A, a), F2->on_term(G, A, a)));
    }
  }

  // The unique functor from the empty presentation into anything.
  Presentation e;
  auto esrc = free_model(e, Flavour::Id1Sigma, "initial");
  GenFunctorBuilder be(esrc, dst, "from-initial");
  Report re = check_structured_functor(be.build(), Budget::of(2));
  INFO(re.to_text());
  CHECK(re.ok());
}

TEST_CASE("functor sending a generator to Sigma(B,B) preserves Id on the nose") {
  Presentation p = parse_presentation("type A\n");
  auto src = free_model(p, Flavour::Id1Sigma);
  Presentation q = parse_presentation("type B\n");
  auto dst = free_model(q, Flavour::Id1Sigma);

  GenFunctorBuilder b(src, dst, "A->Sigma(B,B)");
  b.assign_type("A", dst->ty(Telescope{}, sigma_ty(sym("B"), sym("B"))));
  auto F = b.build();
  Report r = check_structured_functor(F, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());

  // F(Id_A(x,y)) over 1.A.A equals Id_{Sigma(B,B)} over 1.S.S syntactically.
  Telescope tAA;
  tAA.push("x", sym("A"));
  tAA.push("y", sym("A"));
  ObjP G = src->obj(tAA);
  TypeP IdA = src->ty(tAA, id_ty(sym("A"), var(1), var(0)));
  TypeP img = F->on_type(G, IdA);
  ExprP S = sigma_ty(sym("B"), sym("B"));
  Telescope tSS;
  tSS.push("x", S);
  tSS.push("y", S);
  TypeP expected = dst->ty(tSS, id_ty(S, var(1), var(0)));
  CHECK(dst->type_eq(img, expected));
}

TEST_CASE("functor composition passes when the pieces do") {
  Presentation p = parse_presentation("type A\n");
  auto m0 = free_model(p, Flavour::Id1Sigma);
  Presentation q = parse_presentation("type A\ntype B\n");
  auto m1 = free_model(q, Flavour::Id1Sigma);
  Presentation s = parse_presentation("type A\ntype B\ntype C\n");
  auto m2 = free_model(s, Flavour::Id1Sigma);
  auto F = rename_functor(m0, m1, "i01");
  auto G = rename_functor(m1, m2, "i12");
  auto GF = std::make_shared<ComposedFunctor>(G, F);
  Report r = check_structured_functor(GF, Budget::of(2));
  INFO(r.to_text());
  CHECK(r.ok());
}
