#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ctxcat/kernel.hpp"
#include "ctxcat/subst.hpp"

using namespace ctxcat;

namespace {

// Signature with a base type A, a point a : A, a family B over A, a point
// b0 : B(a), and a fibrewise map g : (x:A) -> B(x).
Signature demo_sig() {
  Signature s;
  s.declare({"A", Telescope{}, true, nullptr});
  s.declare({"a", Telescope{}, false, sym("A")});
  {
    Telescope p;
    p.push("x", sym("A"));
    s.declare({"B", p, true, nullptr});
  }
  s.declare({"b0", Telescope{}, false, sym("B", {sym("a")})});
  {
    Telescope p;
    p.push("x", sym("A"));
    s.declare({"g", p, false, sym("B", {var(0)})});
  }
  return s;
}

}  // namespace

TEST_CASE("beta rules for Sigma, Pi, Id") {
  Signature sig = demo_sig();
  Kernel k(&sig);
  Telescope empty;

  SECTION("fst(pair(a,b0)) normalizes to a") {
    ExprP e = fst(pair(sym("a"), sym("b0")));
    ExprP T = sym("A");
    CHECK(expr_eq(k.nf_term(empty, e, T), sym("a")));
  }

  SECTION("snd(pair(a,b0)) normalizes to b0") {
    ExprP e = snd(pair(sym("a"), sym("b0")));
    CHECK(expr_eq(k.nf_term(empty, e, sym("B", {sym("a")})), sym("b0")));
  }

  SECTION("app(lam(x. g(x)), a) normalizes to g(a)") {
    ExprP e = app(lam(sym("g", {var(0)})), sym("a"));
    CHECK(expr_eq(k.nf_term(empty, e, sym("B", {sym("a")})), sym("g", {sym("a")})));
  }

  SECTION("J on refl computes to the base case") {
    // J(x.y.p. B(x), x. g(x), a, a, refl(a)) -> g(a)
    ExprP C = sym("B", {var(2)});
    ExprP d = sym("g", {var(0)});
    ExprP e = j_elim(C, d, sym("a"), sym("a"), refl(sym("a")));
    CHECK(expr_eq(k.nf_term(empty, e, sym("B", {sym("a")})), sym("g", {sym("a")})));
  }
}

TEST_CASE("eta rules") {
  Signature sig = demo_sig();
  Kernel k(&sig);
  Telescope empty;

  SECTION("unit eta: any term of Unit normalizes to tt") {
    Telescope ctx;
    ctx.push("u", unit_ty());
    CHECK(expr_eq(k.nf_term(ctx, var(0), unit_ty()), tt()));
  }

  SECTION("pi eta: a function variable eta-expands") {
    Telescope ctx;
    ctx.push("f", pi_ty(sym("A"), sym("B", {var(0)})));
    ExprP nf = k.nf_term(ctx, var(0), pi_ty(sym("A"), sym("B", {var(0)})));
    CHECK(expr_eq(nf, lam(app(var(1), var(0)))));
    // eta-contracted and eta-long forms are convertible
    CHECK(k.conv_term(ctx, pi_ty(sym("A"), sym("B", {var(0)})), var(0), lam(app(var(1), var(0)))));
  }

  SECTION("sigma eta: a pair variable splits") {
    ExprP ST = sigma_ty(sym("A"), sym("B", {var(0)}));
    Telescope ctx;
    ctx.push("p", ST);
    ExprP nf = k.nf_term(ctx, var(0), ST);
    CHECK(expr_eq(nf, pair(fst(var(0)), snd(var(0)))));
  }
}

TEST_CASE("bidirectional checking") {
  Signature sig = demo_sig();
  Kernel k(&sig);

  SECTION("refl(x) : Id(A,x,x) in context x:A") {
    Telescope ctx;
    ctx.push("x", sym("A"));
    CHECK(k.checks(ctx, refl(var(0)), id_ty(sym("A"), var(0), var(0))));
  }

  SECTION("tt : Unit in the empty context") {
    Telescope empty;
    CHECK(k.checks(empty, tt(), unit_ty()));
  }

  SECTION("x : A does not inhabit Id(A,x,x)") {
    Telescope ctx;
    ctx.push("x", sym("A"));
    std::string why;
    CHECK_FALSE(k.checks(ctx, var(0), id_ty(sym("A"), var(0), var(0)), &why));
    CHECK(!why.empty());
  }

  SECTION("unknown generator symbol is rejected") {
    Telescope empty;
    CHECK_THROWS_AS(k.synth(empty, sym("nope")), KernelError);
  }

  SECTION("arity mismatch is rejected") {
    Telescope empty;
    CHECK_THROWS_AS(k.check_type(empty, sym("B", {})), KernelError);
  }

  SECTION("ill-scoped expression reports the offending index") {
    Telescope empty;
    try {
      k.normalize(empty, var(3));
      FAIL("expected a scope error");
    } catch (const KernelError& e) {
      CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
  }

  SECTION("check is stable under normalization") {
    Telescope ctx;
    ctx.push("x", sym("A"));
    ExprP e = fst(pair(refl(var(0)), tt()));
    ExprP T = id_ty(sym("A"), var(0), fst(pair(var(0), var(0))));
    REQUIRE(k.checks(ctx, e, T));
    ExprP eN = k.nf_term(ctx, e, T);
    ExprP TN = k.nf_type(ctx, T);
    CHECK(k.checks(ctx, eN, TN));
  }
}

TEST_CASE("normalization is idempotent") {
  Signature sig = demo_sig();
  Kernel k(&sig);
  Telescope ctx;
  ctx.push("x", sym("A"));
  ctx.push("h", pi_ty(sym("A"), sym("B", {var(0)})));

  std::vector<ExprP> samples = {
      app(var(0), var(1)),
      fst(pair(var(1), app(var(0), var(1)))),
      j_elim(sym("B", {var(2)}), sym("g", {var(0)}), var(1), var(1), refl(var(1))),
      refl(app(var(0), var(1))),
  };
  for (auto& e : samples) {
    ExprP T = k.synth(ctx, e);
    ExprP n1 = k.nf_term(ctx, e, T);
    ExprP n2 = k.nf_term(ctx, n1, k.nf_type(ctx, T));
    CHECK(expr_eq(n1, n2));
  }
}

TEST_CASE("substitution laws") {
  Signature sig = demo_sig();
  Kernel k(&sig);

  // Γ = (x:A, y:B(x)), Δ = (u:A), Θ = ()
  Telescope G;
  G.push("x", sym("A"));
  G.push("y", sym("B", {var(0)}));
  Telescope D;
  D.push("u", sym("A"));
  Telescope T0;

  // f : G -> D, u := x ; g : T0 -> G, x := a, y := b0
  Subst f{G, D, {var(1)}};
  Subst g{T0, G, {sym("a"), sym("b0")}};
  check_subst(k, f);
  check_subst(k, g);

  SECTION("identity is a two-sided unit") {
    Subst idG = id_subst(G);
    CHECK(subst_eq_syntactic(compose_subst(f, idG), f));
    CHECK(subst_eq_syntactic(compose_subst(id_subst(D), f), f));
  }

  SECTION("substitute(id, e) = e syntactically") {
    ExprP e = id_ty(sym("B", {var(1)}), var(0), sym("g", {var(1)}));
    CHECK(expr_eq(apply_subst(id_subst(G), e), e));
  }

  SECTION("composition agrees with iterated application") {
    ExprP e = sym("B", {var(0)});  // over D
    CHECK(expr_eq(apply_subst(compose_subst(f, g), e), apply_subst(g, apply_subst(f, e))));
  }

  SECTION("associativity of composition, syntactically") {
    // h : D -> T1 with T1 = (w : A)
    Telescope T1;
    T1.push("w", sym("A"));
    Subst h{D, T1, {var(0)}};
    Subst lhs = compose_subst(compose_subst(h, f), g);
    Subst rhs = compose_subst(h, compose_subst(f, g));
    CHECK(subst_eq_syntactic(lhs, rhs));
  }
}

TEST_CASE("random substitution functoriality") {
  Signature sig = demo_sig();
  Kernel k(&sig);
  std::mt19937 rng(20240917);

  // Random well-typed terms of type A over context (x:A, y:A): variables or a.
  auto rnd_term_A = [&](int n_vars) -> ExprP {
    int c = static_cast<int>(rng() % (n_vars + 1));
    if (c < n_vars) return var(c);
    return sym("a");
  };

  Telescope G2;
  G2.push("x", sym("A"));
  G2.push("y", sym("A"));
  Telescope G1;
  G1.push("z", sym("A"));

  for (int trial = 0; trial < 100; ++trial) {
    // f : G1 -> G2, g : G2 -> G1 (components of type A)
    Subst f{G1, G2, {rnd_term_A(1), rnd_term_A(1)}};
    Subst g{G2, G1, {rnd_term_A(2)}};
    check_subst(k, f);
    check_subst(k, g);
    // A test type over G1 mentioning its variable:
    ExprP A = id_ty(sym("A"), var(0), sym("a"));
    // (g after f)*A vs f*(g*A): contravariant application
    ExprP lhs = apply_subst(compose_subst(g, f), A);
    ExprP rhs = apply_subst(f, apply_subst(g, A));
    CHECK(expr_eq(lhs, rhs));
    // and both normalize identically
    CHECK(expr_eq(k.nf_type(G1, lhs), k.nf_type(G1, rhs)));
  }
}

TEST_CASE("oriented equations rewrite") {
  Signature sig;
  sig.declare({"A", Telescope{}, true, nullptr});
  sig.declare({"A2", Telescope{}, true, nullptr});
  // A2 = A as an oriented rule
  sig.add_rule("A2", sym("A"));
  Kernel k(&sig);
  Telescope empty;
  CHECK(expr_eq(k.nf_type(empty, sym("A2")), sym("A")));
  CHECK(k.conv_type(empty, sym("A2"), sym("A")));

  SECTION("non-orientable equations are rejected") {
    Signature s2;
    s2.declare({"X", Telescope{}, true, nullptr});
    s2.declare({"Y", Telescope{}, true, nullptr});
    CHECK_THROWS_AS(s2.add_rule("X", sym("Y")), KernelError);  // Y is later than X
    s2.add_rule("Y", sym("X"));
    CHECK_THROWS_AS(s2.add_rule("Y", sym("X")), KernelError);  // second rule on Y
  }
}

TEST_CASE("Frobenius J gives transport") {
  Signature sig = demo_sig();
  Kernel k(&sig);

  // ctx = (x:A, y:A, p:Id(A,x,y), w:B(x)); transport w along p to B(y).
  Telescope ctx;
  ctx.push("x", sym("A"));
  ctx.push("y", sym("A"));
  ctx.push("p", id_ty(sym("A"), var(1), var(0)));
  ctx.push("w", sym("B", {var(2)}));

  // J[1](D := B(x1); motive C := B(x2); base d := y (the parameter); x, y, p, w)
  ExprP D = sym("B", {var(2)});          // over ...x1,x2,q: B(x1)
  ExprP C = sym("B", {var(2)});          // over ...x1,x2,q,s: B(x2)
  ExprP d = var(0);                      // over ...x, s:B(x): s
  ExprP tr = j_elim_frob({D}, C, d, var(3), var(2), var(1), {var(0)});
  ExprP goal = sym("B", {var(2)});       // B(y) over ctx
  CHECK(k.checks(ctx, tr, goal));

  // Computation: transporting along refl is the identity.
  Telescope ctx2;
  ctx2.push("x", sym("A"));
  ctx2.push("w", sym("B", {var(0)}));
  ExprP tr2 = j_elim_frob({sym("B", {var(2)})}, sym("B", {var(2)}), var(0), var(1), var(1), refl(var(1)), {var(0)});
  CHECK(expr_eq(k.nf_term(ctx2, tr2, sym("B", {var(1)})), var(0)));
}
