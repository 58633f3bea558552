#include "desugar/core_printer.hpp"

#include "syntax/printer.hpp"

namespace eff::core {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

using syntax::make_term;
using syntax::Term;
using syntax::TermPtr;

TermPtr surf(const ExprPtr& e) { return to_surface(*e); }
TermPtr surf(const CompPtr& c) { return to_surface(*c); }

syntax::HandlerClauses surface_clauses(const Expr::Handler& h) {
  syntax::HandlerClauses out;
  for (const auto& c : h.ops) {
    out.ops.push_back(syntax::OpClause{surf(c.instance), c.op, c.arg, c.cont, surf(c.body), c.span});
  }
  out.val = syntax::ValueClause{h.val.pattern, surf(h.val.body)};
  out.finally = syntax::ValueClause{h.finally.pattern, surf(h.finally.body)};
  return out;
}

std::string de(const ExprPtr& e) { return e ? dump_expr(*e) : "_"; }
std::string dc(const CompPtr& c) { return c ? dump_comp(*c) : "_"; }
std::string dp(const PatternPtr& p) { return p ? syntax::dump_pattern(*p) : "_"; }

template <typename T, typename F>
std::string each(const std::vector<T>& xs, F f) {
  std::string out;
  for (const auto& x : xs) out += " " + f(x);
  return out;
}

}  // namespace

TermPtr to_surface(const Expr& e) {
  return std::visit(
      overloaded{
          [&](const Expr::Var& x) { return make_term(Term::Var{x.name}, e.span); },
          [&](const Expr::Const& x) { return make_term(Term::Lit{x.value}, e.span); },
          [&](const Expr::Builtin& x) { return make_term(Term::Prim{x.name}, e.span); },
          [&](const Expr::Tuple& x) {
            std::vector<TermPtr> elems;
            for (const auto& el : x.elems) elems.push_back(surf(el));
            return make_term(Term::Tuple{std::move(elems)}, e.span);
          },
          [&](const Expr::Variant& x) {
            return make_term(Term::Construct{x.ctor, x.arg ? surf(x.arg) : nullptr}, e.span);
          },
          [&](const Expr::Cons& x) { return make_term(Term::Cons{surf(x.head), surf(x.tail)}, e.span); },
          [&](const Expr::List& x) {
            std::vector<TermPtr> elems;
            for (const auto& el : x.elems) elems.push_back(surf(el));
            return make_term(Term::List{std::move(elems)}, e.span);
          },
          [&](const Expr::Lambda& x) {
            return make_term(Term::Fun{{syntax::Param{x.param, x.annotation}}, surf(x.body)}, e.span);
          },
          [&](const Expr::Project& x) { return make_term(Term::Project{surf(x.instance), x.op}, e.span); },
          [&](const Expr::Handler& x) { return make_term(Term::HandlerLit{surface_clauses(x)}, e.span); },
          [&](const Expr::Annot& x) { return make_term(Term::Annot{surf(x.expr), x.type}, e.span); },
      },
      e.node);
}

TermPtr to_surface(const Comp& c) {
  return std::visit(
      overloaded{
          [&](const Comp::Val& x) { return make_term(Term::ValOf{surf(x.expr)}, c.span); },
          [&](const Comp::Let& x) {
            return make_term(Term::Let{{syntax::Binding{x.pattern, surf(x.bound)}}, surf(x.body)}, c.span);
          },
          [&](const Comp::LetSim& x) {
            std::vector<syntax::Binding> bs;
            for (const auto& [p, b] : x.bindings) bs.push_back(syntax::Binding{p, surf(b)});
            return make_term(Term::Let{std::move(bs), surf(x.body)}, c.span);
          },
          [&](const Comp::LetRec& x) {
            std::vector<syntax::RecBinding> bs;
            for (const auto& [n, f] : x.bindings) bs.push_back(syntax::RecBinding{n, surf(f)});
            return make_term(Term::LetRec{std::move(bs), surf(x.body)}, c.span);
          },
          [&](const Comp::If& x) {
            return make_term(Term::If{surf(x.cond), surf(x.then_branch), surf(x.else_branch)}, c.span);
          },
          [&](const Comp::Match& x) {
            std::vector<syntax::MatchCase> cs;
            for (const auto& mc : x.cases) cs.push_back(syntax::MatchCase{mc.pattern, surf(mc.body)});
            return make_term(Term::Match{surf(x.scrutinee), std::move(cs)}, c.span);
          },
          [&](const Comp::App& x) { return make_term(Term::App{surf(x.fn), surf(x.arg)}, c.span); },
          [&](const Comp::New& x) {
            std::optional<syntax::Resource> res;
            if (x.resource) {
              res.emplace();
              res->initial = surf(x.resource->initial);
              for (const auto& rc : x.resource->clauses) {
                res->clauses.push_back(syntax::ResourceClause{rc.op, rc.arg, rc.state, surf(rc.body), rc.span});
              }
            }
            return make_term(Term::New{x.effect, std::move(res)}, c.span);
          },
          [&](const Comp::Handle& x) {
            return make_term(Term::WithHandle{surf(x.handler), surf(x.body)}, c.span);
          },
      },
      c.node);
}

std::string print_comp(const Comp& c) { return syntax::print_term(*to_surface(c)); }

std::string dump_expr(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Expr::Var& x) { return "(var " + x.name + ")"; },
          [](const Expr::Const& x) { return "(const " + syntax::dump_literal(x.value) + ")"; },
          [](const Expr::Builtin& x) { return "(builtin " + x.name + ")"; },
          [](const Expr::Tuple& x) { return "(tuple" + each(x.elems, de) + ")"; },
          [](const Expr::Variant& x) {
            return "(variant " + x.ctor + (x.arg ? " " + de(x.arg) : "") + ")";
          },
          [](const Expr::Cons& x) { return "(cons " + de(x.head) + " " + de(x.tail) + ")"; },
          [](const Expr::List& x) { return "(list" + each(x.elems, de) + ")"; },
          [](const Expr::Lambda& x) {
            std::string param = dp(x.param);
            if (x.annotation) param = "(: " + param + " " + syntax::dump_type_expr(*x.annotation) + ")";
            return "(lambda " + param + " " + dc(x.body) + ")";
          },
          [](const Expr::Project& x) { return "(# " + de(x.instance) + " " + x.op + ")"; },
          [](const Expr::Handler& x) {
            return "(handler (ops" + each(x.ops, [](const OpClause& c) {
                     return "(" + de(c.instance) + " " + c.op + " " + dp(c.arg) + " " + dp(c.cont) +
                            " " + dc(c.body) + ")";
                   }) + ") (val " + dp(x.val.pattern) + " " + dc(x.val.body) + ") (finally " +
                   dp(x.finally.pattern) + " " + dc(x.finally.body) + "))";
          },
          [](const Expr::Annot& x) {
            return "(: " + de(x.expr) + " " + syntax::dump_type_expr(*x.type) + ")";
          },
      },
      e.node);
}

std::string dump_comp(const Comp& c) {
  auto binding = [](const std::pair<PatternPtr, CompPtr>& b) {
    return "(" + dp(b.first) + " " + dc(b.second) + ")";
  };
  auto rec_binding = [](const std::pair<std::string, ExprPtr>& b) {
    return "(" + b.first + " " + de(b.second) + ")";
  };
  return std::visit(
      overloaded{
          [](const Comp::Val& x) { return "(val " + de(x.expr) + ")"; },
          [](const Comp::Let& x) {
            return "(let " + dp(x.pattern) + " " + dc(x.bound) + " " + dc(x.body) + ")";
          },
          [&](const Comp::LetSim& x) {
            return "(let-and (" + each(x.bindings, binding).substr(1) + ") " + dc(x.body) + ")";
          },
          [&](const Comp::LetRec& x) {
            return "(letrec (" + each(x.bindings, rec_binding).substr(1) + ") " + dc(x.body) + ")";
          },
          [](const Comp::If& x) {
            return "(if " + de(x.cond) + " " + dc(x.then_branch) + " " + dc(x.else_branch) + ")";
          },
          [](const Comp::Match& x) {
            if (x.cases.empty()) return "(absurd " + de(x.scrutinee) + ")";
            return "(match " + de(x.scrutinee) + each(x.cases, [](const MatchCase& mc) {
                     return "(" + dp(mc.pattern) + " " + dc(mc.body) + ")";
                   }) + ")";
          },
          [](const Comp::App& x) { return "(app " + de(x.fn) + " " + de(x.arg) + ")"; },
          [](const Comp::New& x) {
            std::string out = "(new " + x.effect;
            if (x.resource) {
              out += " " + de(x.resource->initial) + each(x.resource->clauses, [](const ResourceClause& rc) {
                       return "(" + rc.op + " " + dp(rc.arg) + " " + dp(rc.state) + " " + dc(rc.body) + ")";
                     });
            }
            return out + ")";
          },
          [](const Comp::Handle& x) { return "(with " + de(x.handler) + " " + dc(x.body) + ")"; },
      },
      c.node);
}

std::string dump_item(const Item& item) {
  return std::visit(
      overloaded{
          [](const syntax::TypeDecl& d) { return syntax::dump_item(syntax::Item{d}); },
          [](const Define& d) {
            return "(define" + each(d.bindings, [](const std::pair<PatternPtr, CompPtr>& b) {
                     return "(" + dp(b.first) + " " + dc(b.second) + ")";
                   }) + ")";
          },
          [](const DefineRec& d) {
            return "(define-rec" + each(d.bindings, [](const std::pair<std::string, ExprPtr>& b) {
                     return "(" + b.first + " " + de(b.second) + ")";
                   }) + ")";
          },
          [](const Run& r) { return "(run " + dc(r.comp) + ")"; },
      },
      item);
}

}  // namespace eff::core
