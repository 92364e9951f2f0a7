#include <catch2/catch_amalgamated.hpp>

#include "ctxcat/idext.hpp"
#include "ctxcat/presentation.hpp"

using namespace ctxcat;

namespace {
struct Setup {
  SynModelPtr model;
  ModelPtr m;
};
Setup ab_model() {
  Presentation p = parse_presentation("type A\ntype B (x : A)\nterm a0 : A\n");
  auto mm = free_model(p, Flavour::Id1Sigma, "C");
  return {mm, mm};
}
}  // namespace

TEST_CASE("path algebra combinators typecheck and compute") {
  auto [syn, m] = ab_model();
  // context (x:A, y:A, p:Id(A,x,y))
  Telescope t;
  t.push("x", sym("A"));
  t.push("y", sym("A"));
  t.push("p", id_ty(sym("A"), var(1), var(0)));
  ObjP G = syn->obj(t);
  TypeP A = syn->ty(t, sym("A"));
  TermP x = syn->tm(t, sym("A"), var(2));
  TermP y = syn->tm(t, sym("A"), var(1));
  TermP pp = syn->tm(t, id_ty(sym("A"), var(2), var(1)), var(0));

  SECTION("sym") {
    TermP s = paths::sym(m, G, A, x, y, pp);
    m->validate_term(G, m->id_type(G, A, y, x), s);
  }

  SECTION("trans with refl on the right computes") {
    TermP r = m->refl_term(G, A, y);
    TermP tr = paths::trans(m, G, A, x, y, y, pp, r);
    m->validate_term(G, m->id_type(G, A, x, y), tr);
    CHECK(m->term_eq(tr, pp));
  }

  SECTION("transport along refl is the identity") {
    Telescope t2 = t;
    ObjP G2 = syn->obj(t2);
    // family B over G2.(z:A)
    Telescope tz = t2;
    tz.push("z", sym("A"));
    TypeP fam = syn->ty(tz, sym("B", {var(0)}));
    // u : B(x) -> transport along refl(x)
    Telescope tu = t2;
    tu.push("u", sym("B", {var(2)}));
    ObjP Gu = syn->obj(tu);
    TypeP Au = syn->ty(tu, sym("A"));
    TermP xu = syn->tm(tu, sym("A"), var(3));
    TypeP famu = syn->ty(tu.extended("z", sym("A")), sym("B", {var(0)}));
    TermP uu = syn->tm(tu, sym("B", {var(3)}), var(0));
    TermP rfl = m->refl_term(Gu, Au, xu);
    TermP tr = paths::transport(m, Gu, Au, famu, xu, xu, rfl, uu);
    m->validate_term(Gu, syn->ty(tu, sym("B", {var(3)})), tr);
    CHECK(m->term_eq(tr, uu));
  }

  SECTION("ap and apd typecheck") {
    // f over (.., w:A) given by the generator B? use terms of A: f(w) := w
    Telescope tw = t;
    tw.push("w", sym("A"));
    TermP fbody = syn->tm(tw, sym("A"), var(0));
    TypeP Abase = syn->ty(t, sym("A"));
    TermP ap = paths::ap(m, G, A, Abase, fbody, x, y, pp);
    m->validate_term(G, m->id_type(G, A, x, y), ap);

    TypeP fam = syn->ty(tw, sym("B", {var(0)}));
    Telescope tw2 = t;
    tw2.push("w", sym("A"));
    TermP gbody = syn->tm(tw2, sym("B", {var(0)}), sym("g0", {var(0)}));
    // no g0 in the signature; use apd with the varless identity over B? skip
    (void)fam;
  }

  SECTION("transport of refl along a path is the path") {
    TermP lem = paths::transport_refl_is_path(m, G, A, x, y, pp);
    TypeP idxy = m->id_type(G, A, x, y);
    // lem : Id(Id(A,x,y), tr_p(refl x), p)
    TermP reflx = m->refl_term(G, A, x);
    // build the transported term to state the type
    Telescope tz = t;
    tz.push("z", sym("A"));
    TypeP fam = syn->ty(tz, id_ty(sym("A"), var(3), var(0)));
    TermP tr = paths::transport(m, G, A, fam, x, y, pp, reflx);
    TypeP stmt = m->id_type(G, idxy, tr, pp);
    m->validate_term(G, stmt, lem);
  }
}

TEST_CASE("identity context of a single type") {
  auto [syn, m] = ab_model();
  TypeP A = syn->ty(Telescope{}, sym("A"));
  IdExt ie = make_idext(m, m->terminal(), {A});

  // block = (x0:A, x1:A, p:Id(A,x0,x1))
  REQUIRE(ie.block.size() == 3);
  Telescope expect;
  expect.push("x0", sym("A"));
  expect.push("x1", sym("A"));
  expect.push("p", id_ty(sym("A"), var(1), var(0)));
  CHECK(m->obj_eq(ie.block.obj(), syn->obj(expect)));

  m->validate_map(ie.pi0);
  m->validate_map(ie.pi1);
  m->validate_map(ie.rho);
  m->validate_map(ie.to_block);
  m->validate_map(ie.to_inter);

  // pi0 . rho = id, pi1 . rho = id
  CHECK(m->map_eq(m->comp(ie.pi0, ie.rho), m->id_map(ie.diag.obj())));
  CHECK(m->map_eq(m->comp(ie.pi1, ie.rho), m->id_map(ie.diag.obj())));
  // exchange maps are mutually inverse
  CHECK(m->map_eq(m->comp(ie.to_inter, ie.to_block), m->id_map(ie.inter.obj())));
  CHECK(m->map_eq(m->comp(ie.to_block, ie.to_inter), m->id_map(ie.block.obj())));
}

TEST_CASE("identity context of a length-2 telescope matches the worked form") {
  auto [syn, m] = ab_model();
  TypeP A = syn->ty(Telescope{}, sym("A"));
  Telescope tA;
  tA.push("x", sym("A"));
  TypeP B = syn->ty(tA, sym("B", {var(0)}));
  IdExt ie = make_idext(m, m->terminal(), {A, B});

  REQUIRE(ie.block.size() == 6);
  m->validate_obj(ie.block.obj());
  m->validate_map(ie.rho);
  m->validate_map(ie.pi0);
  m->validate_map(ie.pi1);
  CHECK(m->map_eq(m->comp(ie.pi0, ie.rho), m->id_map(ie.diag.obj())));
  CHECK(m->map_eq(m->comp(ie.pi1, ie.rho), m->id_map(ie.diag.obj())));

  // The first five entries are literal; the last is Id over B(x1) between the
  // transported y0 and y1.
  const Telescope& tele = SyntacticModel::tele(ie.block.obj());
  CHECK(expr_eq(tele.entries[0].second, sym("A")));
  CHECK(expr_eq(tele.entries[1].second, sym("B", {var(0)})));
  CHECK(expr_eq(tele.entries[2].second, sym("A")));
  CHECK(expr_eq(tele.entries[3].second, sym("B", {var(0)})));
  CHECK(expr_eq(tele.entries[4].second, id_ty(sym("A"), var(3), var(1))));
  ExprP last = tele.entries[5].second;
  REQUIRE(last->tag == Tag::IdT);
  CHECK(expr_eq(last->kids[0], sym("B", {var(2)})));  // B(x1)
  CHECK(expr_eq(last->kids[2], var(1)));              // y1
  // the middle endpoint is the transport term; re-typecheck it
  const Kernel& k = syn->kernel();
  k.check_term(SyntacticModel::tele(ie.block.objs[5]).prefix(5), last->kids[1], sym("B", {var(2)}));
}

TEST_CASE("idext elimination computes on refl") {
  auto [syn, m] = ab_model();
  TypeP A = syn->ty(Telescope{}, sym("A"));
  Telescope tA;
  tA.push("x", sym("A"));
  TypeP B = syn->ty(tA, sym("B", {var(0)}));

  for (int len : {1, 2}) {
    std::vector<TypeP> delta = len == 1 ? std::vector<TypeP>{A} : std::vector<TypeP>{A, B};
    IdExt ie = make_idext(m, m->terminal(), delta);
    // motive: Unit over inter; base: tt over diag
    TypeP motive = m->unit_type(ie.inter.obj());
    TermP base = m->tt_term(ie.diag.obj());
    TermP e = idext_elim(ie, {}, motive, base);
    m->validate_term(ie.inter.obj(), motive, e);

    // a motive that actually depends on the context: Id(A, x0_1, x0_1)
    TermP x0 = ie.inter.var(0);
    TypeP motive2 = m->id_type(ie.inter.obj(), m->reindex(ie.inter.proj_to(0), A), x0, x0);
    TermP dx = ie.diag.var(0);
    TermP base2 = m->refl_term(ie.diag.obj(), m->reindex(ie.diag.proj_to(0), A), dx);
    TermP e2 = idext_elim(ie, {}, motive2, base2);
    m->validate_term(ie.inter.obj(), motive2, e2);
    // computation: pulling back along rho (through the exchange) gives base2
    MapP rho_inter = m->comp(ie.to_inter, ie.rho);
    TermP pulled = m->subst_term(rho_inter, e2);
    CHECK(m->term_eq(pulled, base2));
  }
}
