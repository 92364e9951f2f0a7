// The presentation DSL and free models as cell complexes: ordered generator
// cells (contexts, types, terms, equivalences, identity elements, oriented
// equations) compiled to a signature, with the syntactic model as the freely
// generated instance.

#ifndef CTXCAT_PRESENTATION_HPP
#define CTXCAT_PRESENTATION_HPP

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ctxcat/syntactic_model.hpp"

namespace ctxcat {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& m) : std::runtime_error("line " + std::to_string(ln) + ": " + m), line(ln) {}
};

enum class CellKind { Base, Context, Type, Term, Equiv, IdElem, Equation };

struct Cell {
  CellKind kind;
  std::string name;
  std::string over;  // context name ("" = empty context); for Context cells: base name
  bool based = false;
  Telescope scope;  // telescope of `over` at declaration time

  // Context cells: resolved entries; fresh[i] marks entries that introduced a
  // new generator type.
  std::vector<std::pair<std::string, ExprP>> entries;
  std::vector<bool> fresh;

  // Type cells: extra binders beyond the scope.
  std::vector<std::pair<std::string, ExprP>> binders;

  // Term cells: result type over scope. Equation cells: rhs over parameters.
  ExprP type_expr;

  // Equiv cells: endpoint types over scope.
  ExprP lhs_ty, rhs_ty;

  // IdElem cells: base type and endpoints over scope.
  ExprP elem_ty, end_a, end_b;
  bool a_fresh = false, b_fresh = false;
  std::string a_name, b_name;
};

inline bool cell_eq(const Cell& a, const Cell& b) {
  auto oeq = [](const ExprP& x, const ExprP& y) { return (!x && !y) || (x && y && expr_eq(x, y)); };
  if (a.kind != b.kind || a.name != b.name || a.over != b.over || a.based != b.based) return false;
  if (!tele_eq(a.scope, b.scope)) return false;
  if (a.entries.size() != b.entries.size() || a.binders.size() != b.binders.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i].first != b.entries[i].first || !expr_eq(a.entries[i].second, b.entries[i].second)) return false;
  if (a.fresh != b.fresh) return false;
  for (size_t i = 0; i < a.binders.size(); ++i)
    if (a.binders[i].first != b.binders[i].first || !expr_eq(a.binders[i].second, b.binders[i].second)) return false;
  return oeq(a.type_expr, b.type_expr) && oeq(a.lhs_ty, b.lhs_ty) && oeq(a.rhs_ty, b.rhs_ty) &&
         oeq(a.elem_ty, b.elem_ty) && oeq(a.end_a, b.end_a) && oeq(a.end_b, b.end_b) && a.a_fresh == b.a_fresh &&
         a.b_fresh == b.b_fresh && a.a_name == b.a_name && a.b_name == b.b_name;
}

class Presentation {
 public:
  std::vector<Cell> cells;

  std::shared_ptr<const Signature> signature() const { return sig_; }
  const BaseInfo& base() const { return base_; }

  bool cofibrant() const {
    for (auto& c : cells)
      if (c.kind == CellKind::Equation) return false;
    return true;
  }

  bool has_context(const std::string& n) const { return contexts_.count(n) > 0; }
  const Telescope& context(const std::string& n) const {
    auto it = contexts_.find(n);
    if (it == contexts_.end()) throw KernelError("unknown context '" + n + "'");
    return it->second.first;
  }
  bool context_based(const std::string& n) const {
    auto it = contexts_.find(n);
    return it != contexts_.end() && it->second.second;
  }

  // --- programmatic construction ---

  Presentation() : sig_(std::make_shared<Signature>()) {}

  void add_base(const std::string& name) {
    if (base_.has_base) throw KernelError("only one base object is supported");
    base_.has_base = true;
    base_.base_name = name;
    Cell c;
    c.kind = CellKind::Base;
    c.name = name;
    cells.push_back(std::move(c));
  }

  // Incremental builder for context cells: fresh entries declare a generator
  // type over the partial telescope immediately, so later entries in the same
  // statement can refer to it.
  struct ContextBuilder {
    Presentation& p;
    std::string name;
    bool based;
    Telescope partial;
    std::vector<std::pair<std::string, ExprP>> entries;
    std::vector<bool> fresh;

    void add_entry(const std::string& label, ExprP ty) {
      entries.emplace_back(label, ty);
      fresh.push_back(false);
      partial.push(label, std::move(ty));
    }
    void add_fresh(const std::string& label, const std::string& gen) {
      p.declare_type_symbol(gen, partial, {}, based);
      ExprP applied = p.auto_apply(gen, partial);
      entries.emplace_back(label, applied);
      fresh.push_back(true);
      partial.push(label, applied);
    }
  };

  ContextBuilder build_context(const std::string& name, bool based = false) {
    if (contexts_.count(name)) throw KernelError("duplicate context '" + name + "'");
    if (based && !base_.has_base) throw KernelError("context over undeclared base");
    return ContextBuilder{*this, name, based, Telescope{}, {}, {}};
  }

  void finish_context(ContextBuilder&& b) {
    Cell c;
    c.kind = CellKind::Context;
    c.name = b.name;
    c.based = b.based;
    c.over = b.based ? base_.base_name : "";
    c.entries = std::move(b.entries);
    c.fresh = std::move(b.fresh);
    c.scope = b.partial;
    contexts_[b.name] = {b.partial, b.based};
    cells.push_back(std::move(c));
  }

  // entries: (label, type-or-null); null introduces a fresh generator type
  // named by the corresponding element of fresh_names.
  void add_context(const std::string& name, const std::vector<std::pair<std::string, ExprP>>& entries,
                   const std::vector<std::string>& fresh_names = {}, bool based = false) {
    ContextBuilder b = build_context(name, based);
    size_t fresh_ix = 0;
    for (auto& [label, ty] : entries) {
      if (ty)
        b.add_entry(label, ty);
      else {
        if (fresh_ix >= fresh_names.size()) throw KernelError("missing fresh generator name");
        b.add_fresh(label, fresh_names[fresh_ix++]);
      }
    }
    finish_context(std::move(b));
  }

  void add_type(const std::string& name, const std::string& over,
                const std::vector<std::pair<std::string, ExprP>>& binders = {}) {
    auto [scope, based] = scope_of(over);
    Cell c;
    c.kind = CellKind::Type;
    c.name = name;
    c.over = over;
    c.based = based;
    c.scope = scope;
    c.binders = binders;
    Telescope params = scope;
    for (auto& [n, t] : binders) params.push(n, t);
    declare_type_symbol(name, params, {}, based);
    cells.push_back(std::move(c));
  }

  void add_term(const std::string& name, ExprP type_over_scope, const std::string& over) {
    auto [scope, based] = scope_of(over);
    Cell c;
    c.kind = CellKind::Term;
    c.name = name;
    c.over = over;
    c.based = based;
    c.scope = scope;
    c.type_expr = type_over_scope;
    declare_term_symbol(name, scope, type_over_scope, based);
    cells.push_back(std::move(c));
  }

  // Five generators f, g_l, g_r, alpha_l, alpha_r constituting a structured
  // equivalence from Gamma.A to Gamma.B over Gamma.
  void add_equiv(const std::string& name, ExprP A, ExprP B, const std::string& over) {
    auto [scope, based] = scope_of(over);
    Cell c;
    c.kind = CellKind::Equiv;
    c.name = name;
    c.over = over;
    c.based = based;
    c.scope = scope;
    c.lhs_ty = A;
    c.rhs_ty = B;
    Telescope pA = scope.extended("x", A);
    Telescope pB = scope.extended("y", B);
    declare_term_symbol(name + "_f", pA, shift(B, 1), based);
    declare_term_symbol(name + "_gl", pB, shift(A, 1), based);
    declare_term_symbol(name + "_gr", pB, shift(A, 1), based);
    // alpha_l : over (y:B), Id(B, f(gl(y)), y)
    {
      ExprP fgl = apply_sym(name + "_f", scope, shift(A, 1), sym(name + "_gl", spine_with(scope, 1)));
      declare_term_symbol(name + "_al", pB, id_ty(shift(B, 1), fgl, var(0)), based);
    }
    // alpha_r : over (x:A), Id(A, gr(f(x)), x)
    {
      ExprP grf = apply_sym(name + "_gr", scope, shift(B, 1), sym(name + "_f", spine_with(scope, 1)));
      declare_term_symbol(name + "_ar", pA, id_ty(shift(A, 1), grf, var(0)), based);
    }
    cells.push_back(std::move(c));
  }

  // A section of Gamma.A.A.Id_A -> Gamma: endpoints may reference existing
  // terms or introduce fresh ones.
  void add_idelem(const std::string& name, ExprP A, ExprP a, bool a_fresh, const std::string& a_name, ExprP b,
                  bool b_fresh, const std::string& b_name, const std::string& over) {
    auto [scope, based] = scope_of(over);
    Cell c;
    c.kind = CellKind::IdElem;
    c.name = name;
    c.over = over;
    c.based = based;
    c.scope = scope;
    c.elem_ty = A;
    c.a_fresh = a_fresh;
    c.b_fresh = b_fresh;
    c.a_name = a_name;
    c.b_name = b_name;
    if (a_fresh) {
      declare_term_symbol(a_name, scope, A, based);
      a = auto_apply(a_name, scope);
    }
    if (b_fresh) {
      declare_term_symbol(b_name, scope, A, based);
      b = auto_apply(b_name, scope);
    }
    c.end_a = a;
    c.end_b = b;
    declare_term_symbol(name, scope, id_ty(A, a, b), based);
    cells.push_back(std::move(c));
  }

  void add_equation(const std::string& name, ExprP rhs) {
    Cell c;
    c.kind = CellKind::Equation;
    c.name = name;
    c.type_expr = rhs;
    sig_->add_rule(name, rhs);
    cells.push_back(std::move(c));
  }

  // --- helpers over the signature ---

  ExprP auto_apply(const std::string& symname, const Telescope& scope) const {
    const GenDecl& d = sig_->get(symname);
    const int k = d.params.size();
    const int n = scope.size();
    if (k > n) throw KernelError("symbol '" + symname + "' needs " + std::to_string(k) + " arguments");
    std::vector<ExprP> spine;
    for (int i = 0; i < k; ++i) spine.push_back(var(n - 1 - i));
    return sym(symname, std::move(spine));
  }

  std::string print() const;

  std::pair<Telescope, bool> scope_of(const std::string& over) const {
    if (over.empty()) return {Telescope{}, false};
    if (base_.has_base && over == base_.base_name) return {Telescope{}, true};
    auto it = contexts_.find(over);
    if (it == contexts_.end()) throw KernelError("dangling reference to context '" + over + "'");
    return it->second;
  }

 private:
  std::shared_ptr<Signature> sig_;
  BaseInfo base_;
  std::map<std::string, std::pair<Telescope, bool>> contexts_;

  void declare_type_symbol(const std::string& n, const Telescope& params, const ExprP&, bool based) {
    sig_->declare(GenDecl{n, params, true, nullptr});
    if (based) base_.based_symbols.insert(n);
  }
  void declare_term_symbol(const std::string& n, const Telescope& params, ExprP result, bool based) {
    sig_->declare(GenDecl{n, params, false, std::move(result)});
    if (based) base_.based_symbols.insert(n);
  }

  // spine (scope vars shifted by `extra`) for symbols over scope+extra binders
  static std::vector<ExprP> spine_with(const Telescope& scope, int extra) {
    std::vector<ExprP> sp;
    const int n = scope.size();
    for (int i = 0; i < n; ++i) sp.push_back(var(n - 1 - i + extra));
    sp.push_back(var(0));
    return sp;
  }

  // symname applied to scope vars (shifted by 1) and one inner argument.
  static ExprP apply_sym(const std::string& symname, const Telescope& scope, const ExprP&, ExprP inner) {
    std::vector<ExprP> sp;
    const int n = scope.size();
    for (int i = 0; i < n; ++i) sp.push_back(var(n - 1 - i + 1));
    sp.push_back(std::move(inner));
    return sym(symname, std::move(sp));
  }
};

// ----------------------------------------------------------------------------
// Parser
// ----------------------------------------------------------------------------

namespace dsl {

struct Tok {
  enum Kind { Ident, Punct, End } kind;
  std::string text;
};

class Lexer {
 public:
  Lexer(const std::string& s, int line) : s_(s), line_(line) { next(); }

  const Tok& peek() const { return tok_; }
  Tok take() {
    Tok t = tok_;
    next();
    return t;
  }
  bool at_end() const { return tok_.kind == Tok::End; }

  void expect(const std::string& p) {
    if (tok_.text != p) throw ParseError(line_, "expected '" + p + "', found '" + tok_.text + "'");
    next();
  }

  bool accept(const std::string& p) {
    if (tok_.text == p) {
      next();
      return true;
    }
    return false;
  }

  std::string ident() {
    if (tok_.kind != Tok::Ident) throw ParseError(line_, "expected identifier, found '" + tok_.text + "'");
    return take().text;
  }

  int line() const { return line_; }

 private:
  std::string s_;
  size_t pos_ = 0;
  int line_;
  Tok tok_;

  void next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size() || s_[pos_] == '#') {
      tok_ = {Tok::End, ""};
      return;
    }
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      tok_ = {Tok::Ident, s_.substr(start, pos_ - start)};
      return;
    }
    static const std::string puncts = "():,.~=";
    if (puncts.find(c) != std::string::npos) {
      tok_ = {Tok::Punct, std::string(1, c)};
      ++pos_;
      return;
    }
    throw ParseError(line_, std::string("unexpected character '") + c + "'");
  }
};

// Expression parser over a named scope; resolves identifiers to variables,
// then to signature symbols (auto-applied to the scope prefix when bare).
class ExprParser {
 public:
  ExprParser(Lexer& lx, const Presentation& p) : lx_(lx), p_(p) {}

  ExprP expr(const std::vector<std::string>& scope) {
    std::string h = lx_.ident();
    if (h == "Unit") return unit_ty();
    if (h == "tt") return tt();
    if (h == "Id") {
      lx_.expect("(");
      ExprP A = expr(scope);
      lx_.expect(",");
      ExprP a = expr(scope);
      lx_.expect(",");
      ExprP b = expr(scope);
      lx_.expect(")");
      return id_ty(A, a, b);
    }
    if (h == "Sigma" || h == "Pi") {
      lx_.expect("(");
      std::string x = lx_.ident();
      lx_.expect(":");
      ExprP A = expr(scope);
      lx_.expect(",");
      auto s2 = scope;
      s2.push_back(x);
      ExprP B = expr(s2);
      lx_.expect(")");
      return h == "Sigma" ? sigma_ty(A, B) : pi_ty(A, B);
    }
    if (h == "refl" || h == "fst" || h == "snd") {
      lx_.expect("(");
      ExprP a = expr(scope);
      lx_.expect(")");
      return h == "refl" ? refl(a) : (h == "fst" ? fst(a) : snd(a));
    }
    if (h == "pair" || h == "app") {
      lx_.expect("(");
      ExprP a = expr(scope);
      lx_.expect(",");
      ExprP b = expr(scope);
      lx_.expect(")");
      return h == "pair" ? pair(a, b) : app(a, b);
    }
    if (h == "funext") {
      lx_.expect("(");
      ExprP f = expr(scope);
      lx_.expect(",");
      ExprP g = expr(scope);
      lx_.expect(",");
      ExprP hh = expr(scope);
      lx_.expect(")");
      return funext(f, g, hh);
    }
    if (h == "lam") {
      lx_.expect("(");
      std::string x = lx_.ident();
      lx_.expect(".");
      auto s2 = scope;
      s2.push_back(x);
      ExprP b = expr(s2);
      lx_.expect(")");
      return lam(b);
    }
    if (h == "J") {
      lx_.expect("(");
      std::string x1 = lx_.ident();
      lx_.expect(".");
      std::string x2 = lx_.ident();
      lx_.expect(".");
      std::string q = lx_.ident();
      lx_.expect(".");
      auto s3 = scope;
      s3.push_back(x1);
      s3.push_back(x2);
      s3.push_back(q);
      ExprP C = expr(s3);
      lx_.expect(",");
      std::string x = lx_.ident();
      lx_.expect(".");
      auto sd = scope;
      sd.push_back(x);
      ExprP d = expr(sd);
      lx_.expect(",");
      ExprP a = expr(scope);
      lx_.expect(",");
      ExprP b = expr(scope);
      lx_.expect(",");
      ExprP pp = expr(scope);
      lx_.expect(")");
      return j_elim(C, d, a, b, pp);
    }
    // variable?
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
      if (scope[static_cast<size_t>(i)] == h) return var(static_cast<int>(scope.size()) - 1 - i);
    }
    // symbol
    const GenDecl* d = p_.signature()->find(h);
    if (!d) throw ParseError(lx_.line(), "dangling reference '" + h + "'");
    if (lx_.peek().text == "(") {
      lx_.expect("(");
      std::vector<ExprP> spine;
      if (!lx_.accept(")")) {
        spine.push_back(expr(scope));
        while (lx_.accept(",")) spine.push_back(expr(scope));
        lx_.expect(")");
      }
      if (static_cast<int>(spine.size()) != d->params.size())
        throw ParseError(lx_.line(), "arity mismatch for '" + h + "'");
      return sym(h, std::move(spine));
    }
    // bare: auto-apply to the scope prefix
    const int k = d->params.size();
    const int n = static_cast<int>(scope.size());
    if (k > n) throw ParseError(lx_.line(), "symbol '" + h + "' needs " + std::to_string(k) + " arguments");
    std::vector<ExprP> spine;
    for (int i = 0; i < k; ++i) spine.push_back(var(n - 1 - i));
    return sym(h, std::move(spine));
  }

 private:
  Lexer& lx_;
  const Presentation& p_;
};

}  // namespace dsl

namespace dsl {

inline bool is_keyword(const std::string& t) {
  return t == "Unit" || t == "tt" || t == "Id" || t == "Sigma" || t == "Pi" || t == "refl" || t == "fst" ||
         t == "snd" || t == "pair" || t == "app" || t == "lam" || t == "J" || t == "funext" || t == "over";
}

// The trailing "over CTX" clause of a statement (the grammar is prefix-form,
// so a line-level scan is unambiguous). Returns "" when absent.
inline std::string trailing_over(const Presentation& p, const std::string& raw, int lineno) {
  auto posn = raw.rfind(" over ");
  if (posn == std::string::npos) return "";
  Lexer tail(raw.substr(posn + 6), lineno);
  if (tail.peek().kind != Tok::Ident) return "";
  std::string over = tail.take().text;
  if (!tail.at_end()) return "";
  if (!p.has_context(over) && !(p.base().has_base && over == p.base().base_name))
    throw ParseError(lineno, "dangling reference to context '" + over + "'");
  return over;
}

}  // namespace dsl

inline Presentation parse_presentation(const std::string& source) {
  Presentation p;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    dsl::Lexer lx(line, lineno);
    if (lx.at_end()) continue;
    std::string kw = lx.ident();
    try {
      if (kw == "base") {
        p.add_base(lx.ident());
      } else if (kw == "ctx") {
        std::string name = lx.ident();
        std::string over;
        if (lx.accept("over")) over = lx.ident();
        bool based = !over.empty();
        if (based && (!p.base().has_base || over != p.base().base_name))
          throw ParseError(lineno, "contexts may only be declared over the base object");
        auto b = p.build_context(name, based);
        lx.expect("(");
        if (!lx.accept(")")) {
          for (;;) {
            std::string label = lx.ident();
            lx.expect(":");
            // Fresh-generator entry: a single identifier resolving to neither
            // a scope variable nor a declared symbol.
            bool handled = false;
            if (lx.peek().kind == dsl::Tok::Ident) {
              std::string t = lx.peek().text;
              bool is_var = false;
              for (auto& s : b.partial.names()) is_var = is_var || s == t;
              if (!is_var && !dsl::is_keyword(t) && !p.signature()->find(t)) {
                lx.take();
                if (lx.peek().text != "," && lx.peek().text != ")")
                  throw ParseError(lineno, "dangling reference '" + t + "'");
                b.add_fresh(label, t);
                handled = true;
              }
            }
            if (!handled) {
              dsl::ExprParser ep(lx, p);
              b.add_entry(label, ep.expr(b.partial.names()));
            }
            if (lx.accept(",")) continue;
            lx.expect(")");
            break;
          }
        }
        p.finish_context(std::move(b));
      } else if (kw == "type") {
        std::string name = lx.ident();
        std::string over;
        if (lx.accept("over")) over = lx.ident();
        std::vector<std::pair<std::string, ExprP>> binders;
        if (lx.accept("(")) {
          auto scope_names = p.scope_of(over).first.names();
          if (!lx.accept(")")) {
            for (;;) {
              std::string label = lx.ident();
              lx.expect(":");
              dsl::ExprParser ep(lx, p);
              binders.emplace_back(label, ep.expr(scope_names));
              scope_names.push_back(label);
              if (lx.accept(",")) continue;
              lx.expect(")");
              break;
            }
          }
        }
        p.add_type(name, over, binders);
      } else if (kw == "term") {
        std::string name = lx.ident();
        lx.expect(":");
        std::string over = dsl::trailing_over(p, line, lineno);
        auto scope_names = p.scope_of(over).first.names();
        dsl::ExprParser ep(lx, p);
        ExprP T = ep.expr(scope_names);
        if (lx.accept("over")) lx.ident();
        p.add_term(name, T, over);
      } else if (kw == "equiv") {
        std::string name = lx.ident();
        lx.expect(":");
        std::string over = dsl::trailing_over(p, line, lineno);
        auto scope_names = p.scope_of(over).first.names();
        dsl::ExprParser ep(lx, p);
        ExprP A = ep.expr(scope_names);
        lx.expect("~");
        ExprP B = ep.expr(scope_names);
        if (lx.accept("over")) lx.ident();
        p.add_equiv(name, A, B, over);
      } else if (kw == "idelem") {
        std::string name = lx.ident();
        lx.expect(":");
        std::string over = dsl::trailing_over(p, line, lineno);
        auto scope_names = p.scope_of(over).first.names();
        dsl::ExprParser ep(lx, p);
        std::string idkw = lx.ident();
        if (idkw != "Id") throw ParseError(lineno, "idelem expects Id(A, a, b)");
        lx.expect("(");
        ExprP A = ep.expr(scope_names);
        lx.expect(",");
        auto endpoint = [&]() -> std::tuple<ExprP, bool, std::string> {
          if (lx.peek().kind == dsl::Tok::Ident) {
            std::string t = lx.peek().text;
            bool is_var = false;
            for (auto& s : scope_names) is_var = is_var || s == t;
            if (!is_var && !dsl::is_keyword(t) && !p.signature()->find(t)) {
              lx.take();
              return {nullptr, true, t};
            }
          }
          return {ep.expr(scope_names), false, ""};
        };
        auto [a, afresh, aname] = endpoint();
        lx.expect(",");
        auto [b, bfresh, bname] = endpoint();
        lx.expect(")");
        if (lx.accept("over")) lx.ident();
        p.add_idelem(name, A, a, afresh, aname, b, bfresh, bname, over);
      } else if (kw == "eq") {
        std::string name = lx.ident();
        lx.expect("=");
        const GenDecl* d = p.signature()->find(name);
        if (!d) throw ParseError(lineno, "equation over unknown symbol '" + name + "'");
        dsl::ExprParser ep(lx, p);
        ExprP rhs = ep.expr(d->params.names());
        p.add_equation(name, rhs);
      } else {
        throw ParseError(lineno, "unknown statement '" + kw + "'");
      }
      if (!lx.at_end()) throw ParseError(lineno, "trailing input '" + lx.peek().text + "'");
    } catch (const KernelError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return p;
}

// ----------------------------------------------------------------------------
// Printer (parse . print = identity on presentations)
// ----------------------------------------------------------------------------

inline std::string Presentation::print() const {
  std::string out;
  for (auto& c : cells) {
    switch (c.kind) {
      case CellKind::Base:
        out += "base " + c.name + "\n";
        break;
      case CellKind::Context: {
        out += "ctx " + c.name;
        if (c.based) out += " over " + c.over;
        out += " (";
        std::vector<std::string> ns;
        for (size_t i = 0; i < c.entries.size(); ++i) {
          if (i) out += ", ";
          out += c.entries[i].first + " : ";
          if (c.fresh[i])
            out += c.entries[i].second->head;  // the generator name, bare
          else
            out += show(c.entries[i].second, ns);
          ns.push_back(c.entries[i].first);
        }
        out += ")\n";
        break;
      }
      case CellKind::Type: {
        out += "type " + c.name;
        if (!c.over.empty()) out += " over " + c.over;
        if (!c.binders.empty()) {
          out += " (";
          auto ns = c.scope.names();
          for (size_t i = 0; i < c.binders.size(); ++i) {
            if (i) out += ", ";
            out += c.binders[i].first + " : " + show(c.binders[i].second, ns);
            ns.push_back(c.binders[i].first);
          }
          out += ")";
        }
        out += "\n";
        break;
      }
      case CellKind::Term:
        out += "term " + c.name + " : " + show(c.type_expr, c.scope.names());
        if (!c.over.empty()) out += " over " + c.over;
        out += "\n";
        break;
      case CellKind::Equiv:
        out += "equiv " + c.name + " : " + show(c.lhs_ty, c.scope.names()) + " ~ " + show(c.rhs_ty, c.scope.names());
        if (!c.over.empty()) out += " over " + c.over;
        out += "\n";
        break;
      case CellKind::IdElem: {
        out += "idelem " + c.name + " : Id(" + show(c.elem_ty, c.scope.names()) + ", ";
        out += c.a_fresh ? c.a_name : show(c.end_a, c.scope.names());
        out += ", ";
        out += c.b_fresh ? c.b_name : show(c.end_b, c.scope.names());
        out += ")";
        if (!c.over.empty()) out += " over " + c.over;
        out += "\n";
        break;
      }
      case CellKind::Equation: {
        const GenDecl& d = sig_->get(c.name);
        out += "eq " + c.name + " = " + show(c.type_expr, d.params.names()) + "\n";
        break;
      }
    }
  }
  return out;
}

// ----------------------------------------------------------------------------
// Free model
// ----------------------------------------------------------------------------

namespace detail {
inline bool mentions_pi(const ExprP& e) {
  if (e->tag == Tag::Pi || e->tag == Tag::Funext || e->tag == Tag::Lam || e->tag == Tag::App) return true;
  for (auto& k : e->kids)
    if (mentions_pi(k)) return true;
  return false;
}
}  // namespace detail

inline SynModelPtr free_model(const Presentation& p, Flavour fl, const std::string& name = "") {
  // Validate every cell over the compiled signature.
  Kernel k(p.signature().get());
  for (auto& d : p.signature()->decls()) {
    k.check_tele(Telescope{}, d.params);
    if (!d.is_type) k.check_type(d.params, d.result);
    if (fl == Flavour::Id1Sigma) {
      for (auto& [n, t] : d.params.entries)
        if (detail::mentions_pi(t)) throw KernelError("Pi used in flavour without Pi (symbol '" + d.name + "')");
      if (!d.is_type && detail::mentions_pi(d.result))
        throw KernelError("Pi used in flavour without Pi (symbol '" + d.name + "')");
    }
  }
  std::string nm = name.empty() ? (p.cofibrant() ? "free" : "free/eq") : name;
  return std::make_shared<SyntacticModel>(p.signature(), fl, nm, p.base());
}

}  // namespace ctxcat

#endif  // CTXCAT_PRESENTATION_HPP
