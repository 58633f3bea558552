#include "desugar/desugar.hpp"

#include <functional>
#include <sstream>

namespace eff::desugar {

using namespace core;
using syntax::Term;
using syntax::TermPtr;

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Computations pulled out of one expression, in source order.
using Hoists = std::vector<std::pair<PatternPtr, CompPtr>>;

class Desugarer {
 public:
  Desugarer(NameSupply& names, std::vector<Diagnostic>& diags) : names_(names), diags_(diags) {}

  CompPtr comp(const TermPtr& t);
  ExprPtr lambda(const std::vector<syntax::Param>& params, const TermPtr& body, Span span);

 private:
  ExprPtr expr(const TermPtr& t, Hoists& h);

  // Wraps c in the simultaneous let binding the hoisted computations.
  CompPtr wrap(Hoists h, CompPtr c, Span span) {
    if (h.empty()) return c;
    if (h.size() >= 2) {
      std::ostringstream msg;
      msg << h.size()
          << " computations in this expression are hoisted into a simultaneous let and "
             "evaluated left to right";
      diags_.push_back(Diagnostic{Severity::Warning, "sequencing", msg.str(), span});
    }
    if (h.size() == 1) return make_comp(Comp::Let{h[0].first, h[0].second, c}, span);
    return make_comp(Comp::LetSim{std::move(h), c}, span);
  }

  ExprPtr hoist(CompPtr c, Hoists& h, Span span) {
    std::string name = names_.fresh();
    h.emplace_back(syntax::make_pattern(Pattern::Var{name}, span), std::move(c));
    return make_expr(Expr::Var{name}, span);
  }

  std::string fresh() { return names_.fresh(); }

  PatternPtr pvar(const std::string& name, Span span) {
    return syntax::make_pattern(Pattern::Var{name}, span);
  }

  ExprPtr var(const std::string& name, Span span) { return make_expr(Expr::Var{name}, span); }

  ExprPtr handler(const syntax::HandlerClauses& hc, Hoists& h, Span span);
  std::vector<MatchCase> cases(const std::vector<syntax::MatchCase>& cs);

  CompPtr app_builtin2(const std::string& op, ExprPtr a, ExprPtr b,
                       const std::function<CompPtr(ExprPtr)>& k, Span span) {
    // let $t = op a in let $r = $t b in k $r
    const std::string t = fresh();
    const std::string r = fresh();
    CompPtr partial = make_comp(Comp::App{make_expr(Expr::Builtin{op}, span), std::move(a)}, span);
    CompPtr full = make_comp(Comp::App{var(t, span), std::move(b)}, span);
    CompPtr rest = k(var(r, span));
    return make_comp(
        Comp::Let{pvar(t, span), partial, make_comp(Comp::Let{pvar(r, span), full, rest}, span)},
        span);
  }

  CompPtr for_loop(const Term::For& f, Span span);
  CompPtr while_loop(const Term::While& w, Span span);

  NameSupply& names_;
  std::vector<Diagnostic>& diags_;
};

PatternPtr identity_pattern(const std::string& name, Span span) {
  return syntax::make_pattern(Pattern::Var{name}, span);
}

ValueClause identity_clause(const std::string& name, Span span) {
  return ValueClause{identity_pattern(name, span),
                     make_comp(Comp::Val{make_expr(Expr::Var{name}, span)}, span)};
}

}  // namespace

bool is_expression(const Term& t) {
  return std::visit(
      overloaded{
          [](const Term::Var&) { return true; },
          [](const Term::Lit&) { return true; },
          [](const Term::Prim&) { return true; },
          [](const Term::Tuple& x) {
            for (const auto& e : x.elems) {
              if (!is_expression(*e)) return false;
            }
            return true;
          },
          [](const Term::Construct& x) { return !x.arg || is_expression(*x.arg); },
          [](const Term::Cons& x) { return is_expression(*x.head) && is_expression(*x.tail); },
          [](const Term::List& x) {
            for (const auto& e : x.elems) {
              if (!is_expression(*e)) return false;
            }
            return true;
          },
          [](const Term::Fun&) { return true; },
          [](const Term::Function&) { return true; },
          [](const Term::Project& x) { return is_expression(*x.instance); },
          [](const Term::HandlerLit& x) {
            for (const auto& c : x.clauses.ops) {
              if (!is_expression(*c.instance)) return false;
            }
            return true;
          },
          [](const Term::Annot& x) { return is_expression(*x.term); },
          [](const auto&) { return false; },
      },
      t.node);
}

namespace {

ExprPtr Desugarer::lambda(const std::vector<syntax::Param>& params, const TermPtr& body,
                          Span span) {
  CompPtr c = comp(body);
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    ExprPtr fn = make_expr(Expr::Lambda{it->pattern, it->annotation, c}, span);
    if (std::next(it) == params.rend()) return fn;
    c = make_comp(Comp::Val{fn}, span);
  }
  return nullptr;  // unreachable: the parser never builds a parameterless fun
}

std::vector<MatchCase> Desugarer::cases(const std::vector<syntax::MatchCase>& cs) {
  std::vector<MatchCase> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(MatchCase{c.pattern, comp(c.body)});
  return out;
}

ExprPtr Desugarer::handler(const syntax::HandlerClauses& hc, Hoists& h, Span span) {
  Expr::Handler out;
  for (const auto& c : hc.ops) {
    out.ops.push_back(OpClause{expr(c.instance, h), c.op, c.arg, c.cont, comp(c.body), c.span});
  }
  if (hc.val) {
    out.val = ValueClause{hc.val->pattern, comp(hc.val->body)};
  } else {
    out.val = identity_clause(fresh(), span);
  }
  if (hc.finally) {
    out.finally = ValueClause{hc.finally->pattern, comp(hc.finally->body)};
  } else {
    out.finally = identity_clause(fresh(), span);
  }
  return make_expr(std::move(out), span);
}

ExprPtr Desugarer::expr(const TermPtr& t, Hoists& h) {
  const Span span = t->span;
  return std::visit(
      overloaded{
          [&](const Term::Var& x) { return var(x.name, span); },
          [&](const Term::Lit& x) { return make_expr(Expr::Const{x.value}, span); },
          [&](const Term::Prim& x) { return make_expr(Expr::Builtin{x.name}, span); },
          [&](const Term::Tuple& x) {
            std::vector<ExprPtr> elems;
            for (const auto& e : x.elems) elems.push_back(expr(e, h));
            return make_expr(Expr::Tuple{std::move(elems)}, span);
          },
          [&](const Term::Construct& x) {
            ExprPtr arg = x.arg ? expr(x.arg, h) : nullptr;
            return make_expr(Expr::Variant{x.ctor, arg}, span);
          },
          [&](const Term::Cons& x) {
            ExprPtr head = expr(x.head, h);
            ExprPtr tail = expr(x.tail, h);
            return make_expr(Expr::Cons{head, tail}, span);
          },
          [&](const Term::List& x) {
            std::vector<ExprPtr> elems;
            for (const auto& e : x.elems) elems.push_back(expr(e, h));
            return make_expr(Expr::List{std::move(elems)}, span);
          },
          [&](const Term::Fun& x) { return lambda(x.params, x.body, span); },
          [&](const Term::Function& x) {
            const std::string arg = fresh();
            CompPtr body = make_comp(Comp::Match{var(arg, span), cases(x.cases)}, span);
            return make_expr(Expr::Lambda{pvar(arg, span), nullptr, body}, span);
          },
          [&](const Term::Project& x) {
            ExprPtr inst = expr(x.instance, h);
            return make_expr(Expr::Project{inst, x.op}, span);
          },
          [&](const Term::HandlerLit& x) { return handler(x.clauses, h, span); },
          [&](const Term::Annot& x) {
            ExprPtr inner = expr(x.term, h);
            return make_expr(Expr::Annot{inner, x.type}, span);
          },
          [&](const auto&) { return hoist(comp(t), h, span); },
      },
      t->node);
}

CompPtr Desugarer::for_loop(const Term::For& f, Span span) {
  Hoists h;
  ExprPtr lo = expr(f.from, h);
  ExprPtr hi = expr(f.to, h);
  const std::string hi_name = fresh();
  const std::string loop = fresh();
  const std::string& i = f.var;
  CompPtr body = comp(f.body);
  CompPtr step = app_builtin2(
      "+", var(i, span), make_expr(Expr::Const{Literal{std::int64_t{1}}}, span),
      [&](ExprPtr next) { return make_comp(Comp::App{var(loop, span), next}, span); }, span);
  CompPtr iteration = make_comp(Comp::Let{syntax::make_pattern(Pattern::Wildcard{}, span), body, step}, span);
  CompPtr test = app_builtin2(
      ">", var(i, span), var(hi_name, span),
      [&](ExprPtr done) {
        CompPtr unit = make_comp(Comp::Val{make_expr(Expr::Const{Literal{syntax::Unit{}}}, span)}, span);
        return make_comp(Comp::If{done, unit, iteration}, span);
      },
      span);
  ExprPtr fn = make_expr(Expr::Lambda{pvar(i, span), nullptr, test}, span);
  CompPtr run = make_comp(Comp::App{var(loop, span), lo}, span);
  CompPtr rec = make_comp(Comp::LetRec{{{loop, fn}}, run}, span);
  CompPtr bind_hi = make_comp(Comp::Let{pvar(hi_name, span), make_comp(Comp::Val{hi}, span), rec}, span);
  return wrap(std::move(h), bind_hi, span);
}

CompPtr Desugarer::while_loop(const Term::While& w, Span span) {
  const std::string loop = fresh();
  const std::string flag = fresh();
  const ExprPtr unit = make_expr(Expr::Const{Literal{syntax::Unit{}}}, span);
  CompPtr again = make_comp(Comp::App{var(loop, span), unit}, span);
  CompPtr iteration =
      make_comp(Comp::Let{syntax::make_pattern(Pattern::Wildcard{}, span), comp(w.body), again}, span);
  CompPtr branch =
      make_comp(Comp::If{var(flag, span), iteration, make_comp(Comp::Val{unit}, span)}, span);
  CompPtr test = make_comp(Comp::Let{pvar(flag, span), comp(w.cond), branch}, span);
  ExprPtr fn = make_expr(
      Expr::Lambda{syntax::make_pattern(Pattern::Const{Literal{syntax::Unit{}}}, span), nullptr, test},
      span);
  return make_comp(Comp::LetRec{{{loop, fn}}, again}, span);
}

CompPtr Desugarer::comp(const TermPtr& t) {
  const Span span = t->span;
  return std::visit(
      overloaded{
          [&](const Term::App& x) {
            Hoists h;
            ExprPtr fn = expr(x.fn, h);
            ExprPtr arg = expr(x.arg, h);
            return wrap(std::move(h), make_comp(Comp::App{fn, arg}, span), span);
          },
          [&](const Term::LogicOp& x) {
            Hoists h;
            ExprPtr lhs = expr(x.lhs, h);
            CompPtr rhs = comp(x.rhs);
            CompPtr shortcut = make_comp(
                Comp::Val{make_expr(Expr::Const{Literal{x.op == syntax::Logic::Or}}, span)}, span);
            CompPtr c = x.op == syntax::Logic::And ? make_comp(Comp::If{lhs, rhs, shortcut}, span)
                                                   : make_comp(Comp::If{lhs, shortcut, rhs}, span);
            return wrap(std::move(h), c, span);
          },
          [&](const Term::Let& x) {
            if (x.bindings.size() == 1) {
              CompPtr bound = comp(x.bindings[0].value);
              return make_comp(Comp::Let{x.bindings[0].pattern, bound, comp(x.body)}, span);
            }
            std::vector<std::pair<PatternPtr, CompPtr>> bs;
            for (const auto& b : x.bindings) bs.emplace_back(b.pattern, comp(b.value));
            return make_comp(Comp::LetSim{std::move(bs), comp(x.body)}, span);
          },
          [&](const Term::LetRec& x) {
            std::vector<std::pair<std::string, ExprPtr>> bs;
            for (const auto& b : x.bindings) {
              Hoists h;
              ExprPtr fn = expr(b.value, h);
              if (!h.empty() || !std::holds_alternative<Expr::Lambda>(fn->node)) {
                diags_.push_back(Diagnostic{Severity::Error, "let-rec",
                                            "the right-hand side of 'let rec' must be a function",
                                            b.value->span});
              }
              bs.emplace_back(b.name, fn);
            }
            return make_comp(Comp::LetRec{std::move(bs), comp(x.body)}, span);
          },
          [&](const Term::If& x) {
            Hoists h;
            ExprPtr cond = expr(x.cond, h);
            CompPtr then_branch = comp(x.then_branch);
            CompPtr else_branch =
                x.else_branch
                    ? comp(x.else_branch)
                    : make_comp(Comp::Val{make_expr(Expr::Const{Literal{syntax::Unit{}}}, span)}, span);
            return wrap(std::move(h), make_comp(Comp::If{cond, then_branch, else_branch}, span), span);
          },
          [&](const Term::Match& x) {
            Hoists h;
            ExprPtr scrutinee = expr(x.scrutinee, h);
            return wrap(std::move(h), make_comp(Comp::Match{scrutinee, cases(x.cases)}, span), span);
          },
          [&](const Term::New& x) {
            if (!x.resource) return make_comp(Comp::New{x.effect, std::nullopt}, span);
            Hoists h;
            Resource res;
            res.initial = expr(x.resource->initial, h);
            for (const auto& c : x.resource->clauses) {
              res.clauses.push_back(ResourceClause{c.op, c.arg, c.state, comp(c.body), c.span});
            }
            return wrap(std::move(h), make_comp(Comp::New{x.effect, std::move(res)}, span), span);
          },
          [&](const Term::WithHandle& x) {
            Hoists h;
            ExprPtr hd = expr(x.handler, h);
            return wrap(std::move(h), make_comp(Comp::Handle{hd, comp(x.body)}, span), span);
          },
          [&](const Term::HandleInline& x) {
            Hoists h;
            ExprPtr hd = handler(x.clauses, h, span);
            return wrap(std::move(h), make_comp(Comp::Handle{hd, comp(x.body)}, span), span);
          },
          [&](const Term::Seq& x) {
            CompPtr first = comp(x.first);
            return make_comp(
                Comp::Let{syntax::make_pattern(Pattern::Wildcard{}, x.first->span), first, comp(x.second)},
                span);
          },
          [&](const Term::For& x) { return for_loop(x, span); },
          [&](const Term::While& x) { return while_loop(x, span); },
          [&](const Term::ValOf& x) {
            Hoists h;
            ExprPtr e = expr(x.expr, h);
            return wrap(std::move(h), make_comp(Comp::Val{e}, span), span);
          },
          [&](const auto&) {
            Hoists h;
            ExprPtr e = expr(t, h);
            return wrap(std::move(h), make_comp(Comp::Val{e}, span), span);
          },
      },
      t->node);
}

}  // namespace

std::string render(const Diagnostic& d, std::string_view file) {
  std::ostringstream out;
  out << file << ":" << to_string(d.span.begin) << ": "
      << (d.severity == Severity::Warning ? "warning" : "error") << "[" << d.code
      << "]: " << d.message;
  return out.str();
}

Result desugar(const Term& term, NameSupply& names) {
  Result r;
  Desugarer d(names, r.diagnostics);
  // Share ownership without copying: the caller keeps `term` alive.
  TermPtr ptr(std::shared_ptr<const Term>{}, &term);
  r.comp = d.comp(ptr);
  core::resolve_scopes(*r.comp);
  return r;
}

Result desugar(const Term& term) {
  NameSupply names;
  return desugar(term, names);
}

ItemResult desugar_item(const syntax::Item& item, NameSupply& names) {
  ItemResult r{syntax::TypeDecl{}, {}};
  Desugarer d(names, r.diagnostics);
  r.item = std::visit(
      overloaded{
          [&](const syntax::TypeDecl& x) -> core::Item { return x; },
          [&](const syntax::LetDef& x) -> core::Item {
            Define def{{}, x.span};
            for (const auto& b : x.bindings) def.bindings.emplace_back(b.pattern, d.comp(b.value));
            return def;
          },
          [&](const syntax::LetRecDef& x) -> core::Item {
            // Reuse the term-level checks by desugaring `let rec ... in ()`.
            DefineRec def{{}, x.span};
            auto body = syntax::make_term(Term::Lit{Literal{syntax::Unit{}}}, x.span);
            auto letrec = syntax::make_term(Term::LetRec{x.bindings, body}, x.span);
            CompPtr c = d.comp(letrec);
            def.bindings = std::get<Comp::LetRec>(c->node).bindings;
            return def;
          },
          [&](const syntax::TopTerm& x) -> core::Item {
            return Run{d.comp(x.term), x.term->span};
          },
      },
      item);
  core::resolve_scopes(r.item);
  return r;
}

}  // namespace eff::desugar
