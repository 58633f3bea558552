#include "syntax/printer.hpp"

#include <cctype>
#include <cmath>

#include "common/format.hpp"

namespace eff::syntax {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

bool is_symbolic(const std::string& name) {
  return !name.empty() && !std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_' &&
         name[0] != '$';
}

std::string name_ref(const std::string& name) {
  if (name == "mod") return "(mod)";
  // Spaces keep `( * )` from reading as a comment opener.
  return is_symbolic(name) ? "( " + name + " )" : name;
}

std::string literal_source(const Literal& lit) {
  return std::visit(overloaded{
                        [](std::int64_t v) {
                          return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
                        },
                        [](bool b) -> std::string { return b ? "true" : "false"; },
                        [](Unit) -> std::string { return "()"; },
                        [](const std::string& s) { return quote_string(s); },
                        [](double d) {
                          std::string s = format_float(d);
                          return std::signbit(d) ? "(" + s + ")" : s;
                        },
                    },
                    lit);
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string term(const TermPtr& t) { return paren(print_term(*t)); }

std::string pat(const PatternPtr& p) { return print_pattern(*p); }

std::string ty(const TypeExprPtr& t) { return paren(print_type_expr(*t)); }

std::string clauses_source(const HandlerClauses& hc) {
  std::string out;
  for (const auto& c : hc.ops) {
    out += " | " + term(c.instance) + "#" + c.op + " " + pat(c.arg) + " " + pat(c.cont) +
           " -> " + term(c.body);
  }
  if (hc.val) out += " | val " + pat(hc.val->pattern) + " -> " + term(hc.val->body);
  if (hc.finally) out += " | finally " + pat(hc.finally->pattern) + " -> " + term(hc.finally->body);
  return out;
}

std::string cases_source(const std::vector<MatchCase>& cases) {
  std::string out;
  for (const auto& c : cases) out += " | " + pat(c.pattern) + " -> " + term(c.body);
  return out;
}

std::string binder(const PatternPtr& p) {
  if (const auto* v = std::get_if<Pattern::Var>(&p->node)) return name_ref(v->name);
  return pat(p);
}

}  // namespace

std::string print_pattern(const Pattern& p) {
  return std::visit(
      overloaded{
          [](const Pattern::Var& v) { return v.name; },
          [](const Pattern::Wildcard&) -> std::string { return "_"; },
          [](const Pattern::Const& c) { return literal_source(c.value); },
          [](const Pattern::Tuple& t) {
            std::string out = "(";
            for (std::size_t i = 0; i < t.elems.size(); ++i) {
              if (i > 0) out += ", ";
              out += pat(t.elems[i]);
            }
            return out + ")";
          },
          [](const Pattern::Construct& c) {
            return c.arg ? "(" + c.ctor + " " + pat(c.arg) + ")" : c.ctor;
          },
          [](const Pattern::Cons& c) { return "(" + pat(c.head) + " :: " + pat(c.tail) + ")"; },
          [](const Pattern::List& l) {
            std::string out = "[";
            for (std::size_t i = 0; i < l.elems.size(); ++i) {
              if (i > 0) out += "; ";
              out += pat(l.elems[i]);
            }
            return out + "]";
          },
      },
      p.node);
}

std::string print_type_expr(const TypeExpr& t) {
  return std::visit(
      overloaded{
          [](const TypeExpr::Var& v) { return v.name; },
          [](const TypeExpr::Named& n) {
            if (n.args.empty()) return n.name;
            if (n.args.size() == 1) return ty(n.args[0]) + " " + n.name;
            std::string out = "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              if (i > 0) out += ", ";
              out += ty(n.args[i]);
            }
            return out + ") " + n.name;
          },
          [](const TypeExpr::Arrow& a) { return ty(a.from) + " -> " + ty(a.to); },
          [](const TypeExpr::Product& p) {
            std::string out;
            for (std::size_t i = 0; i < p.elems.size(); ++i) {
              if (i > 0) out += " * ";
              out += ty(p.elems[i]);
            }
            return out;
          },
          [](const TypeExpr::Sum& s) { return ty(s.left) + " + " + ty(s.right); },
          [](const TypeExpr::Handler& h) { return ty(h.from) + " => " + ty(h.to); },
      },
      t.node);
}

std::string print_term(const Term& t) {
  return std::visit(
      overloaded{
          [](const Term::Var& v) { return name_ref(v.name); },
          [](const Term::Lit& l) { return literal_source(l.value); },
          [](const Term::Tuple& t) {
            std::string out;
            for (std::size_t i = 0; i < t.elems.size(); ++i) {
              if (i > 0) out += ", ";
              out += term(t.elems[i]);
            }
            return out;
          },
          [](const Term::Construct& c) { return c.arg ? c.ctor + " " + term(c.arg) : c.ctor; },
          [](const Term::Cons& c) { return term(c.head) + " :: " + term(c.tail); },
          [](const Term::List& l) {
            std::string out = "[";
            for (std::size_t i = 0; i < l.elems.size(); ++i) {
              if (i > 0) out += "; ";
              out += term(l.elems[i]);
            }
            return out + "]";
          },
          [](const Term::Fun& f) {
            std::string out = "fun";
            for (const auto& p : f.params) {
              if (p.annotation) {
                out += " (" + pat(p.pattern) + " : " + print_type_expr(*p.annotation) + ")";
              } else {
                out += " " + pat(p.pattern);
              }
            }
            return out + " -> " + term(f.body);
          },
          [](const Term::Function& f) { return "function" + cases_source(f.cases); },
          [](const Term::Project& p) { return term(p.instance) + "#" + p.op; },
          [](const Term::HandlerLit& h) { return "handler" + clauses_source(h.clauses); },
          [](const Term::App& a) {
            if (const auto* v = std::get_if<Term::Var>(&a.fn->node)) {
              if (v->name == "~-") return "- " + term(a.arg);
              if (v->name == "~-.") return "-. " + term(a.arg);
            }
            return term(a.fn) + " " + term(a.arg);
          },
          [](const Term::LogicOp& l) {
            return term(l.lhs) + (l.op == Logic::And ? " && " : " || ") + term(l.rhs);
          },
          [](const Term::Let& l) {
            std::string out = "let ";
            for (std::size_t i = 0; i < l.bindings.size(); ++i) {
              if (i > 0) out += " and ";
              out += binder(l.bindings[i].pattern) + " = " + term(l.bindings[i].value);
            }
            return out + " in " + term(l.body);
          },
          [](const Term::LetRec& l) {
            std::string out = "let rec ";
            for (std::size_t i = 0; i < l.bindings.size(); ++i) {
              if (i > 0) out += " and ";
              out += name_ref(l.bindings[i].name) + " = " + term(l.bindings[i].value);
            }
            return out + " in " + term(l.body);
          },
          [](const Term::If& i) {
            std::string out = "if " + term(i.cond) + " then " + term(i.then_branch);
            if (i.else_branch) out += " else " + term(i.else_branch);
            return out;
          },
          [](const Term::Match& m) {
            return "match " + term(m.scrutinee) + " with" + cases_source(m.cases);
          },
          [](const Term::New& n) {
            std::string out = "new " + n.effect;
            if (n.resource) {
              out += " @ " + term(n.resource->initial) + " with";
              for (const auto& c : n.resource->clauses) {
                out += " operation " + c.op + " " + pat(c.arg) + " @ " + pat(c.state) + " -> " +
                       term(c.body);
              }
              out += " end";
            }
            return out;
          },
          [](const Term::WithHandle& w) {
            return "with " + term(w.handler) + " handle " + term(w.body);
          },
          [](const Term::HandleInline& h) {
            return "handle " + term(h.body) + " with" + clauses_source(h.clauses) + " end";
          },
          [](const Term::Seq& s) { return term(s.first) + "; " + term(s.second); },
          [](const Term::For& f) {
            return "for " + f.var + " = " + term(f.from) + " to " + term(f.to) + " do " +
                   term(f.body) + " done";
          },
          [](const Term::While& w) {
            return "while " + term(w.cond) + " do " + term(w.body) + " done";
          },
          [](const Term::ValOf& v) { return "val " + term(v.expr); },
          [](const Term::Annot& a) {
            // Annotations only parse inside parentheses.
            return "(" + term(a.term) + " : " + print_type_expr(*a.type) + ")";
          },
          [](const Term::Prim& p) { return name_ref(p.name); },
      },
      t.node);
}

std::string print_item(const Item& item) {
  return std::visit(
      overloaded{
          [](const TypeDecl& d) {
            std::string out = "type ";
            if (d.params.size() == 1) {
              out += d.params[0] + " ";
            } else if (!d.params.empty()) {
              out += "(";
              for (std::size_t i = 0; i < d.params.size(); ++i) {
                if (i > 0) out += ", ";
                out += d.params[i];
              }
              out += ") ";
            }
            out += d.name + " =";
            if (const auto* e = std::get_if<EffectDecl>(&d.body)) {
              out += " effect";
              for (const auto& op : e->ops) {
                out += " operation " + op.name + " : " + ty(op.param) + " -> " + ty(op.result);
              }
              out += " end";
            } else {
              for (const auto& c : std::get<VariantDecl>(d.body).ctors) {
                out += " | " + c.name;
                if (c.arg) out += " of " + ty(c.arg);
              }
            }
            return out;
          },
          [](const LetDef& d) {
            std::string out = "let ";
            for (std::size_t i = 0; i < d.bindings.size(); ++i) {
              if (i > 0) out += " and ";
              out += binder(d.bindings[i].pattern) + " = " + term(d.bindings[i].value);
            }
            return out;
          },
          [](const LetRecDef& d) {
            std::string out = "let rec ";
            for (std::size_t i = 0; i < d.bindings.size(); ++i) {
              if (i > 0) out += " and ";
              out += name_ref(d.bindings[i].name) + " = " + term(d.bindings[i].value);
            }
            return out;
          },
          [](const TopTerm& t) { return term(t.term); },
      },
      item);
}

std::string print_program(const std::vector<Item>& items) {
  std::string out;
  for (const auto& item : items) out += print_item(item) + "\n;;\n";
  return out;
}

// ---------------------------------------------------------------------------
// S-expression dumps

namespace {

std::string dt(const TermPtr& t) { return t ? dump_term(*t) : "_"; }
std::string dp(const PatternPtr& p) { return p ? dump_pattern(*p) : "_"; }
std::string dy(const TypeExprPtr& t) { return t ? dump_type_expr(*t) : "_"; }

template <typename T, typename F>
std::string dump_list(const std::vector<T>& xs, F f) {
  std::string out;
  for (const auto& x : xs) out += " " + f(x);
  return out;
}

template <typename T, typename F>
std::string joined(const std::vector<T>& xs, F f) {
  std::string out = dump_list(xs, f);
  return out.empty() ? out : out.substr(1);
}

std::string dump_clauses(const HandlerClauses& hc) {
  std::string out = "(ops";
  for (const auto& c : hc.ops) {
    out += " (" + dt(c.instance) + " " + c.op + " " + dp(c.arg) + " " + dp(c.cont) + " " +
           dt(c.body) + ")";
  }
  out += ")";
  if (hc.val) out += " (val " + dp(hc.val->pattern) + " " + dt(hc.val->body) + ")";
  if (hc.finally) out += " (finally " + dp(hc.finally->pattern) + " " + dt(hc.finally->body) + ")";
  return out;
}

std::string dump_cases(const std::vector<MatchCase>& cases) {
  return dump_list(cases, [](const MatchCase& c) {
    return "(" + dp(c.pattern) + " " + dt(c.body) + ")";
  });
}

}  // namespace

std::string dump_literal(const Literal& lit) {
  return std::visit(overloaded{
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool b) -> std::string { return b ? "true" : "false"; },
                        [](Unit) -> std::string { return "()"; },
                        [](const std::string& s) { return quote_string(s); },
                        [](double d) { return format_float(d); },
                    },
                    lit);
}

std::string dump_pattern(const Pattern& p) {
  return std::visit(
      overloaded{
          [](const Pattern::Var& v) { return "(pvar " + v.name + ")"; },
          [](const Pattern::Wildcard&) -> std::string { return "(pwild)"; },
          [](const Pattern::Const& c) { return "(pconst " + dump_literal(c.value) + ")"; },
          [](const Pattern::Tuple& t) { return "(ptuple" + dump_list(t.elems, dp) + ")"; },
          [](const Pattern::Construct& c) {
            return "(pctor " + c.ctor + (c.arg ? " " + dp(c.arg) : "") + ")";
          },
          [](const Pattern::Cons& c) { return "(pcons " + dp(c.head) + " " + dp(c.tail) + ")"; },
          [](const Pattern::List& l) { return "(plist" + dump_list(l.elems, dp) + ")"; },
      },
      p.node);
}

std::string dump_type_expr(const TypeExpr& t) {
  return std::visit(
      overloaded{
          [](const TypeExpr::Var& v) { return v.name; },
          [](const TypeExpr::Named& n) {
            if (n.args.empty()) return n.name;
            return "(" + n.name + dump_list(n.args, dy) + ")";
          },
          [](const TypeExpr::Arrow& a) { return "(-> " + dy(a.from) + " " + dy(a.to) + ")"; },
          [](const TypeExpr::Product& p) { return "(*" + dump_list(p.elems, dy) + ")"; },
          [](const TypeExpr::Sum& s) { return "(+ " + dy(s.left) + " " + dy(s.right) + ")"; },
          [](const TypeExpr::Handler& h) { return "(=> " + dy(h.from) + " " + dy(h.to) + ")"; },
      },
      t.node);
}

std::string dump_term(const Term& t) {
  return std::visit(
      overloaded{
          [](const Term::Var& v) { return "(var " + v.name + ")"; },
          [](const Term::Lit& l) { return "(lit " + dump_literal(l.value) + ")"; },
          [](const Term::Tuple& t) { return "(tuple" + dump_list(t.elems, dt) + ")"; },
          [](const Term::Construct& c) {
            return "(ctor " + c.ctor + (c.arg ? " " + dt(c.arg) : "") + ")";
          },
          [](const Term::Cons& c) { return "(cons " + dt(c.head) + " " + dt(c.tail) + ")"; },
          [](const Term::List& l) { return "(list" + dump_list(l.elems, dt) + ")"; },
          [](const Term::Fun& f) {
            return "(fun (" +
                   joined(f.params,
                             [](const Param& p) {
                               return p.annotation ? "(: " + dp(p.pattern) + " " + dy(p.annotation) + ")"
                                                   : dp(p.pattern);
                             }) +
                   ") " + dt(f.body) + ")";
          },
          [](const Term::Function& f) { return "(function" + dump_cases(f.cases) + ")"; },
          [](const Term::Project& p) { return "(# " + dt(p.instance) + " " + p.op + ")"; },
          [](const Term::HandlerLit& h) { return "(handler " + dump_clauses(h.clauses) + ")"; },
          [](const Term::App& a) { return "(app " + dt(a.fn) + " " + dt(a.arg) + ")"; },
          [](const Term::LogicOp& l) {
            return std::string(l.op == Logic::And ? "(&& " : "(|| ") + dt(l.lhs) + " " + dt(l.rhs) + ")";
          },
          [](const Term::Let& l) {
            return "(let (" +
                   joined(l.bindings,
                             [](const Binding& b) { return "(" + dp(b.pattern) + " " + dt(b.value) + ")"; }) +
                   ") " + dt(l.body) + ")";
          },
          [](const Term::LetRec& l) {
            return "(letrec (" +
                   joined(l.bindings,
                             [](const RecBinding& b) { return "(" + b.name + " " + dt(b.value) + ")"; }) +
                   ") " + dt(l.body) + ")";
          },
          [](const Term::If& i) {
            return "(if " + dt(i.cond) + " " + dt(i.then_branch) + " " + dt(i.else_branch) + ")";
          },
          [](const Term::Match& m) { return "(match " + dt(m.scrutinee) + dump_cases(m.cases) + ")"; },
          [](const Term::New& n) {
            std::string out = "(new " + n.effect;
            if (n.resource) {
              out += " " + dt(n.resource->initial) +
                     dump_list(n.resource->clauses, [](const ResourceClause& c) {
                       return "(" + c.op + " " + dp(c.arg) + " " + dp(c.state) + " " + dt(c.body) + ")";
                     });
            }
            return out + ")";
          },
          [](const Term::WithHandle& w) { return "(with " + dt(w.handler) + " " + dt(w.body) + ")"; },
          [](const Term::HandleInline& h) {
            return "(handle " + dt(h.body) + " " + dump_clauses(h.clauses) + ")";
          },
          [](const Term::Seq& s) { return "(seq " + dt(s.first) + " " + dt(s.second) + ")"; },
          [](const Term::For& f) {
            return "(for " + f.var + " " + dt(f.from) + " " + dt(f.to) + " " + dt(f.body) + ")";
          },
          [](const Term::While& w) { return "(while " + dt(w.cond) + " " + dt(w.body) + ")"; },
          [](const Term::ValOf& v) { return "(val " + dt(v.expr) + ")"; },
          [](const Term::Annot& a) { return "(: " + dt(a.term) + " " + dy(a.type) + ")"; },
          [](const Term::Prim& p) { return "(prim " + p.name + ")"; },
      },
      t.node);
}

std::string dump_item(const Item& item) {
  return std::visit(
      overloaded{
          [](const TypeDecl& d) {
            std::string out = "(type " + d.name + " (" + joined(d.params, [](const std::string& p) { return p; }) + ")";
            if (const auto* e = std::get_if<EffectDecl>(&d.body)) {
              out += " (effect" + dump_list(e->ops, [](const EffectOp& op) {
                       return "(" + op.name + " " + dy(op.param) + " " + dy(op.result) + ")";
                     }) + ")";
            } else {
              out += " (variant" + dump_list(std::get<VariantDecl>(d.body).ctors, [](const CtorDecl& c) {
                       return "(" + c.name + (c.arg ? " " + dy(c.arg) : "") + ")";
                     }) + ")";
            }
            return out + ")";
          },
          [](const LetDef& d) {
            return "(define" + dump_list(d.bindings, [](const Binding& b) {
                     return "(" + dp(b.pattern) + " " + dt(b.value) + ")";
                   }) + ")";
          },
          [](const LetRecDef& d) {
            return "(define-rec" + dump_list(d.bindings, [](const RecBinding& b) {
                     return "(" + b.name + " " + dt(b.value) + ")";
                   }) + ")";
          },
          [](const TopTerm& t) { return dt(t.term); },
      },
      item);
}

}  // namespace eff::syntax
