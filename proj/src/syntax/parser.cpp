#include "syntax/parser.hpp"

#include <array>
#include <cctype>

namespace eff::syntax {
namespace {

constexpr std::array kOperatorNames = {
    "!", ":=", "+", "-", "*", "/", "mod", "+.", "-.", "*.", "/.",
    "=", "<>", "<", ">", "<=", ">=", "@", "&&", "||",
};

bool is_operator_name(const Token& t) {
  if (t.kind != TokenKind::Symbol) return false;
  for (std::string_view op : kOperatorNames) {
    if (t.text == op) return true;
  }
  return false;
}

bool is_ctor_name(const Token& t) {
  return t.kind == TokenKind::Identifier && std::isupper(static_cast<unsigned char>(t.text[0]));
}

bool is_value_name(const Token& t) {
  return t.kind == TokenKind::Identifier && !is_ctor_name(t);
}

Span join(Span a, Span b) { return Span{a.begin, b.end}; }

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  std::vector<Item> program() {
    std::vector<Item> items;
    while (peek().kind != TokenKind::End) {
      if (peek().is_symbol(";;")) {
        next();
        continue;
      }
      items.push_back(item());
    }
    return items;
  }

  TermPtr whole_term() {
    TermPtr t = seq();
    if (peek().kind != TokenKind::End) fail("end of input");
    return t;
  }

  TypeExprPtr whole_type() {
    TypeExprPtr t = type();
    if (peek().kind != TokenKind::End) fail("end of input");
    return t;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    const std::size_t j = i_ + k;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }

  const Token& next() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    last_end_ = t.end;
    return t;
  }

  Position here() const { return peek().position; }

  Span from(Position begin) const { return Span{begin, last_end_}; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found;
    switch (t.kind) {
      case TokenKind::End: found = "end of input"; break;
      case TokenKind::StringLiteral: found = "string literal"; break;
      default: found = "'" + t.text + "'";
    }
    throw ParseError("expected " + expected + " but found " + found,
                     Span{t.position, t.end}, t.kind == TokenKind::End);
  }

  bool accept_symbol(std::string_view s) {
    if (peek().is_symbol(s)) {
      next();
      return true;
    }
    return false;
  }

  bool accept_keyword(std::string_view s) {
    if (peek().is_keyword(s)) {
      next();
      return true;
    }
    return false;
  }

  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("'" + std::string(s) + "'");
  }

  void expect_keyword(std::string_view s) {
    if (!accept_keyword(s)) fail("'" + std::string(s) + "'");
  }

  std::string expect_value_name() {
    if (!is_value_name(peek())) fail("identifier");
    return next().text;
  }

  // -- items ----------------------------------------------------------------

  Item item() {
    if (peek().is_keyword("type")) return type_decl();
    if (peek().is_keyword("let")) {
      const Position begin = here();
      next();
      if (accept_keyword("rec")) {
        auto bindings = rec_bindings();
        if (accept_keyword("in")) {
          TermPtr body = seq();
          return TopTerm{make_term(Term::LetRec{std::move(bindings), body}, from(begin))};
        }
        return LetRecDef{std::move(bindings), from(begin)};
      }
      auto bindings = let_bindings();
      if (accept_keyword("in")) {
        TermPtr body = seq();
        return TopTerm{make_term(Term::Let{std::move(bindings), body}, from(begin))};
      }
      return LetDef{std::move(bindings), from(begin)};
    }
    return TopTerm{seq()};
  }

  TypeDecl type_decl() {
    const Position begin = here();
    expect_keyword("type");
    TypeDecl decl;
    if (peek().kind == TokenKind::TypeVariable) {
      decl.params.push_back(next().text);
    } else if (peek().is_symbol("(") && peek(1).kind == TokenKind::TypeVariable) {
      next();
      decl.params.push_back(next().text);
      while (accept_symbol(",")) {
        if (peek().kind != TokenKind::TypeVariable) fail("type variable");
        decl.params.push_back(next().text);
      }
      expect_symbol(")");
    }
    decl.name = expect_value_name();
    expect_symbol("=");
    if (accept_keyword("effect")) {
      EffectDecl eff;
      while (accept_keyword("operation")) {
        EffectOp op;
        op.name = expect_value_name();
        expect_symbol(":");
        TypeExprPtr t = type();
        const auto* arrow = std::get_if<TypeExpr::Arrow>(&t->node);
        if (arrow == nullptr) {
          throw ParseError("operation '" + op.name + "' must have a function type A -> B",
                           t->span, false);
        }
        op.param = arrow->from;
        op.result = arrow->to;
        eff.ops.push_back(std::move(op));
      }
      expect_keyword("end");
      decl.body = std::move(eff);
    } else {
      VariantDecl var;
      accept_symbol("|");
      do {
        if (!is_ctor_name(peek())) fail("constructor name");
        CtorDecl ctor;
        ctor.name = next().text;
        if (accept_keyword("of")) ctor.arg = type();
        var.ctors.push_back(std::move(ctor));
      } while (accept_symbol("|"));
      decl.body = std::move(var);
    }
    decl.span = from(begin);
    return decl;
  }

  // -- bindings -------------------------------------------------------------

  // Returns the bound name if the next tokens are `name` or `(op)`.
  std::optional<std::string> binder_name() {
    if (is_value_name(peek())) return next().text;
    if (peek().is_symbol("(") && is_operator_name(peek(1)) && peek(2).is_symbol(")")) {
      next();
      std::string op = next().text;
      next();
      return op;
    }
    return std::nullopt;
  }

  // In `fun` a trailing `: t` annotates the last parameter and stops before
  // arrows (`fun x : int -> c`); in `let` it annotates the result.
  std::vector<Param> params_until(std::string_view stop, TypeExprPtr* result = nullptr) {
    std::vector<Param> params;
    while (!peek().is_symbol(stop) && !peek().is_symbol(":")) {
      params.push_back(param());
    }
    if (accept_symbol(":")) {
      if (result != nullptr) {
        *result = type();
      } else {
        if (params.empty()) fail("parameter");
        params.back().annotation = type_sum();
      }
    }
    return params;
  }

  TermPtr annotate(TermPtr body, const TypeExprPtr& ty) {
    if (!ty) return body;
    return make_term(Term::Annot{body, ty}, body->span);
  }

  Param param() {
    if (peek().is_symbol("(") && !peek(1).is_symbol(")") && !is_operator_name(peek(1))) {
      const Position begin = here();
      next();
      PatternPtr p = pattern();
      TypeExprPtr annot;
      if (accept_symbol(":")) annot = type();
      expect_symbol(")");
      if (!annot) return Param{p, nullptr};
      return Param{make_pattern(p->node, from(begin)), annot};
    }
    return Param{pattern_atom(), nullptr};
  }

  Binding let_binding() {
    const Position begin = here();
    const std::size_t save = i_;
    if (auto name = binder_name()) {
      if (accept_symbol("=")) {
        return Binding{make_pattern(Pattern::Var{*name}, from(begin)), seq()};
      }
      if (!peek().is_symbol("::") && !peek().is_symbol(",")) {
        const Position fun_begin = here();
        TypeExprPtr result;
        std::vector<Param> params = params_until("=", &result);
        expect_symbol("=");
        TermPtr body = annotate(seq(), result);
        if (params.empty()) return Binding{make_pattern(Pattern::Var{*name}, from(begin)), body};
        return Binding{make_pattern(Pattern::Var{*name}, Span{begin, fun_begin}),
                       make_term(Term::Fun{std::move(params), body}, Span{fun_begin, body->span.end})};
      }
    }
    i_ = save;
    PatternPtr p = pattern();
    expect_symbol("=");
    return Binding{p, seq()};
  }

  std::vector<Binding> let_bindings() {
    std::vector<Binding> out;
    do {
      out.push_back(let_binding());
    } while (accept_keyword("and"));
    return out;
  }

  std::vector<RecBinding> rec_bindings() {
    std::vector<RecBinding> out;
    do {
      auto name = binder_name();
      if (!name) fail("function name");
      const Position fun_begin = here();
      TypeExprPtr result;
      std::vector<Param> params = params_until("=", &result);
      expect_symbol("=");
      TermPtr body = annotate(seq(), result);
      if (!params.empty()) {
        body = make_term(Term::Fun{std::move(params), body}, Span{fun_begin, body->span.end});
      }
      out.push_back(RecBinding{*name, body});
    } while (accept_keyword("and"));
    return out;
  }

  // -- terms ----------------------------------------------------------------

  bool starts_term(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return t.text == "let" || t.text == "fun" || t.text == "function" ||
               t.text == "match" || t.text == "if" || t.text == "handler" ||
               t.text == "handle" || t.text == "with" || t.text == "new" ||
               t.text == "for" || t.text == "while" || t.text == "true" ||
               t.text == "false" || t.text == "val";
      case TokenKind::Symbol:
        return t.text == "(" || t.text == "[" || t.text == "!" || t.text == "-" ||
               t.text == "-.";
      default:
        return false;
    }
  }

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return t.text == "true" || t.text == "false";
      case TokenKind::Symbol:
        return t.text == "(" || t.text == "[" || t.text == "!";
      default:
        return false;
    }
  }

  TermPtr seq() {
    TermPtr first = stmt();
    if (peek().is_symbol(";") && !starts_term(peek(1))) {
      next();  // trailing separator
      return first;
    }
    if (accept_symbol(";")) {
      TermPtr rest = seq();
      return make_term(Term::Seq{first, rest}, join(first->span, rest->span));
    }
    return first;
  }

  TermPtr stmt() { return assign(); }

  TermPtr binary(TermPtr op, TermPtr lhs, TermPtr rhs) {
    const Span s = join(lhs->span, rhs->span);
    return make_term(Term::App{make_term(Term::App{op, lhs}, lhs->span), rhs}, s);
  }

  TermPtr op_var(const Token& t) {
    return make_term(Term::Var{t.text}, Span{t.position, t.end});
  }

  TermPtr assign() {
    TermPtr lhs = tuple();
    if (peek().is_symbol(":=")) {
      TermPtr op = op_var(next());
      TermPtr rhs = assign();
      return binary(op, lhs, rhs);
    }
    return lhs;
  }

  TermPtr tuple() {
    TermPtr first = logic_or();
    if (!peek().is_symbol(",")) return first;
    std::vector<TermPtr> elems{first};
    while (accept_symbol(",")) elems.push_back(logic_or());
    const Span s = join(first->span, elems.back()->span);
    return make_term(Term::Tuple{std::move(elems)}, s);
  }

  TermPtr logic_or() {
    TermPtr lhs = logic_and();
    if (accept_symbol("||")) {
      TermPtr rhs = logic_or();
      return make_term(Term::LogicOp{Logic::Or, lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  TermPtr logic_and() {
    TermPtr lhs = compare();
    if (accept_symbol("&&")) {
      TermPtr rhs = logic_and();
      return make_term(Term::LogicOp{Logic::And, lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  static bool one_of(const Token& t, std::initializer_list<std::string_view> ops) {
    if (t.kind != TokenKind::Symbol) return false;
    for (auto op : ops) {
      if (t.text == op) return true;
    }
    return false;
  }

  TermPtr compare() {
    TermPtr lhs = concat();
    while (one_of(peek(), {"=", "<>", "<", ">", "<=", ">="})) {
      TermPtr op = op_var(next());
      lhs = binary(op, lhs, concat());
    }
    return lhs;
  }

  TermPtr concat() {
    TermPtr lhs = additive();
    if (peek().is_symbol("::")) {
      next();
      TermPtr rhs = concat();
      return make_term(Term::Cons{lhs, rhs}, join(lhs->span, rhs->span));
    }
    if (peek().is_symbol("@")) {
      TermPtr op = op_var(next());
      return binary(op, lhs, concat());
    }
    return lhs;
  }

  TermPtr additive() {
    TermPtr lhs = multiplicative();
    while (one_of(peek(), {"+", "-", "+.", "-."})) {
      TermPtr op = op_var(next());
      lhs = binary(op, lhs, multiplicative());
    }
    return lhs;
  }

  TermPtr multiplicative() {
    TermPtr lhs = unary();
    while (one_of(peek(), {"*", "/", "mod", "*.", "/."})) {
      TermPtr op = op_var(next());
      lhs = binary(op, lhs, unary());
    }
    return lhs;
  }

  TermPtr unary() {
    const Token& t = peek();
    if (t.is_symbol("-") || t.is_symbol("-.")) {
      const Position begin = here();
      const bool is_float_op = t.text == "-.";
      next();
      if (!is_float_op && peek().kind == TokenKind::IntLiteral) {
        // -9223372036854775808 cannot be written; the literal lexer already
        // rejected its positive counterpart.
        const std::int64_t v = next().int_value;
        return make_term(Term::Lit{Literal{-v}}, from(begin));
      }
      if (peek().kind == TokenKind::FloatLiteral) {
        const double v = next().float_value;
        return make_term(Term::Lit{Literal{-v}}, from(begin));
      }
      TermPtr operand = unary();
      TermPtr neg = make_term(Term::Var{is_float_op ? "~-." : "~-"}, Span{begin, begin});
      return make_term(Term::App{neg, operand}, from(begin));
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "let") return let_term();
      if (t.text == "fun") return fun_term();
      if (t.text == "function") return function_term();
      if (t.text == "match") return match_term();
      if (t.text == "if") return if_term();
      if (t.text == "handler") return handler_term();
      if (t.text == "handle") return handle_term();
      if (t.text == "with") return with_term();
      if (t.text == "new") return new_term();
      if (t.text == "for") return for_term();
      if (t.text == "while") return while_term();
      if (t.text == "val") {
        const Position begin = here();
        next();
        TermPtr e = assign();
        return make_term(Term::ValOf{e}, from(begin));
      }
    }
    return application();
  }

  TermPtr application() {
    const Position begin = here();
    if (is_ctor_name(peek())) {
      std::string ctor = next().text;
      TermPtr arg;
      if (starts_atom(peek())) arg = prefix();
      return make_term(Term::Construct{std::move(ctor), arg}, from(begin));
    }
    TermPtr fn = prefix();
    while (starts_atom(peek())) {
      TermPtr arg = prefix();
      fn = make_term(Term::App{fn, arg}, from(begin));
    }
    return fn;
  }

  TermPtr prefix() {
    if (peek().is_symbol("!")) {
      const Position begin = here();
      TermPtr op = op_var(next());
      TermPtr arg = prefix();
      return make_term(Term::App{op, arg}, from(begin));
    }
    return projection();
  }

  TermPtr projection() {
    const Position begin = here();
    TermPtr e = atom();
    while (accept_symbol("#")) {
      std::string op = expect_value_name();
      e = make_term(Term::Project{e, std::move(op)}, from(begin));
    }
    return e;
  }

  TermPtr atom() {
    const Position begin = here();
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Identifier:
        next();
        if (is_ctor_name(t)) return make_term(Term::Construct{t.text, nullptr}, from(begin));
        return make_term(Term::Var{t.text}, from(begin));
      case TokenKind::IntLiteral:
        next();
        return make_term(Term::Lit{Literal{t.int_value}}, from(begin));
      case TokenKind::FloatLiteral:
        next();
        return make_term(Term::Lit{Literal{t.float_value}}, from(begin));
      case TokenKind::StringLiteral:
        next();
        return make_term(Term::Lit{Literal{t.text}}, from(begin));
      case TokenKind::Keyword:
        if (t.text == "true" || t.text == "false") {
          next();
          return make_term(Term::Lit{Literal{t.text == "true"}}, from(begin));
        }
        break;
      case TokenKind::Symbol:
        if (t.text == "(") return paren_term();
        if (t.text == "[") return list_term();
        break;
      default:
        break;
    }
    fail("expression");
  }

  TermPtr paren_term() {
    const Position begin = here();
    expect_symbol("(");
    if (accept_symbol(")")) return make_term(Term::Lit{Literal{Unit{}}}, from(begin));
    if (is_operator_name(peek()) && peek(1).is_symbol(")")) {
      std::string op = next().text;
      next();
      return make_term(Term::Var{op}, from(begin));
    }
    TermPtr inner = seq();
    if (accept_symbol(":")) {
      TypeExprPtr ty = type();
      expect_symbol(")");
      return make_term(Term::Annot{inner, ty}, from(begin));
    }
    expect_symbol(")");
    // Parentheses carry no node; the span widens to include them.
    return std::make_shared<const Term>(Term{inner->node, from(begin)});
  }

  TermPtr list_term() {
    const Position begin = here();
    expect_symbol("[");
    std::vector<TermPtr> elems;
    if (!accept_symbol("]")) {
      elems.push_back(stmt());
      while (accept_symbol(";")) {
        if (peek().is_symbol("]")) break;
        elems.push_back(stmt());
      }
      expect_symbol("]");
    }
    return make_term(Term::List{std::move(elems)}, from(begin));
  }

  TermPtr let_term() {
    const Position begin = here();
    expect_keyword("let");
    if (accept_keyword("rec")) {
      auto bindings = rec_bindings();
      expect_keyword("in");
      TermPtr body = seq();
      return make_term(Term::LetRec{std::move(bindings), body}, from(begin));
    }
    auto bindings = let_bindings();
    expect_keyword("in");
    TermPtr body = seq();
    return make_term(Term::Let{std::move(bindings), body}, from(begin));
  }

  TermPtr fun_term() {
    const Position begin = here();
    expect_keyword("fun");
    std::vector<Param> params = params_until("->");
    if (params.empty()) fail("parameter");
    expect_symbol("->");
    TermPtr body = seq();
    return make_term(Term::Fun{std::move(params), body}, from(begin));
  }

  std::vector<MatchCase> cases(bool allow_empty) {
    std::vector<MatchCase> out;
    const bool leading_bar = accept_symbol("|");
    if (!leading_bar && allow_empty && !starts_pattern(peek())) return out;
    do {
      PatternPtr p = pattern();
      expect_symbol("->");
      TermPtr body = seq();
      out.push_back(MatchCase{p, body});
    } while (accept_symbol("|"));
    return out;
  }

  TermPtr function_term() {
    const Position begin = here();
    expect_keyword("function");
    auto cs = cases(false);
    return make_term(Term::Function{std::move(cs)}, from(begin));
  }

  TermPtr match_term() {
    const Position begin = here();
    expect_keyword("match");
    TermPtr scrutinee = seq();
    expect_keyword("with");
    auto cs = cases(true);
    return make_term(Term::Match{scrutinee, std::move(cs)}, from(begin));
  }

  TermPtr if_term() {
    const Position begin = here();
    expect_keyword("if");
    TermPtr cond = seq();
    expect_keyword("then");
    TermPtr then_branch = stmt();
    TermPtr else_branch;
    if (accept_keyword("else")) else_branch = stmt();
    return make_term(Term::If{cond, then_branch, else_branch}, from(begin));
  }

  HandlerClauses handler_clauses() {
    HandlerClauses hc;
    accept_symbol("|");
    do {
      const Position begin = here();
      if (accept_keyword("val")) {
        if (hc.val) throw ParseError("duplicate val clause", from(begin), false);
        PatternPtr p = pattern();
        expect_symbol("->");
        hc.val = ValueClause{p, seq()};
      } else if (accept_keyword("finally")) {
        if (hc.finally) throw ParseError("duplicate finally clause", from(begin), false);
        PatternPtr p = pattern();
        expect_symbol("->");
        hc.finally = ValueClause{p, seq()};
      } else {
        OpClause clause;
        clause.instance = atom();
        expect_symbol("#");
        clause.op = expect_value_name();
        clause.arg = pattern_atom();
        clause.cont = pattern_atom();
        expect_symbol("->");
        clause.body = seq();
        clause.span = from(begin);
        hc.ops.push_back(std::move(clause));
      }
    } while (accept_symbol("|"));
    return hc;
  }

  TermPtr handler_term() {
    const Position begin = here();
    expect_keyword("handler");
    HandlerClauses hc = handler_clauses();
    return make_term(Term::HandlerLit{std::move(hc)}, from(begin));
  }

  TermPtr handle_term() {
    const Position begin = here();
    expect_keyword("handle");
    TermPtr body = seq();
    expect_keyword("with");
    HandlerClauses hc = handler_clauses();
    accept_keyword("end");
    return make_term(Term::HandleInline{body, std::move(hc)}, from(begin));
  }

  TermPtr with_term() {
    const Position begin = here();
    expect_keyword("with");
    TermPtr h = stmt();
    expect_keyword("handle");
    TermPtr body = seq();
    return make_term(Term::WithHandle{h, body}, from(begin));
  }

  TermPtr new_term() {
    const Position begin = here();
    expect_keyword("new");
    std::string effect = expect_value_name();
    if (!accept_symbol("@")) return make_term(Term::New{std::move(effect), std::nullopt}, from(begin));
    Resource res;
    res.initial = application();
    expect_keyword("with");
    while (peek().is_keyword("operation")) {
      const Position cbegin = here();
      next();
      ResourceClause clause;
      clause.op = expect_value_name();
      clause.arg = pattern_atom();
      expect_symbol("@");
      clause.state = pattern_atom();
      expect_symbol("->");
      clause.body = seq();
      clause.span = from(cbegin);
      res.clauses.push_back(std::move(clause));
    }
    expect_keyword("end");
    return make_term(Term::New{std::move(effect), std::move(res)}, from(begin));
  }

  TermPtr for_term() {
    const Position begin = here();
    expect_keyword("for");
    std::string var = expect_value_name();
    expect_symbol("=");
    TermPtr lo = seq();
    expect_keyword("to");
    TermPtr hi = seq();
    expect_keyword("do");
    TermPtr body = seq();
    expect_keyword("done");
    return make_term(Term::For{std::move(var), lo, hi, body}, from(begin));
  }

  TermPtr while_term() {
    const Position begin = here();
    expect_keyword("while");
    TermPtr cond = seq();
    expect_keyword("do");
    TermPtr body = seq();
    expect_keyword("done");
    return make_term(Term::While{cond, body}, from(begin));
  }

  // -- patterns -------------------------------------------------------------

  bool starts_pattern(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return t.text == "true" || t.text == "false";
      case TokenKind::Symbol:
        return t.text == "(" || t.text == "[" || t.text == "_" || t.text == "-";
      default:
        return false;
    }
  }

  PatternPtr pattern() {
    const Position begin = here();
    PatternPtr first = pattern_cons();
    if (!peek().is_symbol(",")) return first;
    std::vector<PatternPtr> elems{first};
    while (accept_symbol(",")) elems.push_back(pattern_cons());
    return make_pattern(Pattern::Tuple{std::move(elems)}, from(begin));
  }

  PatternPtr pattern_cons() {
    const Position begin = here();
    PatternPtr head = pattern_app();
    if (accept_symbol("::")) {
      PatternPtr tail = pattern_cons();
      return make_pattern(Pattern::Cons{head, tail}, from(begin));
    }
    return head;
  }

  PatternPtr pattern_app() {
    const Position begin = here();
    if (is_ctor_name(peek())) {
      std::string ctor = next().text;
      PatternPtr arg;
      if (starts_pattern(peek()) && !peek().is_symbol("-")) arg = pattern_atom();
      return make_pattern(Pattern::Construct{std::move(ctor), arg}, from(begin));
    }
    return pattern_atom();
  }

  PatternPtr pattern_atom() {
    const Position begin = here();
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Identifier:
        next();
        if (is_ctor_name(t)) return make_pattern(Pattern::Construct{t.text, nullptr}, from(begin));
        return make_pattern(Pattern::Var{t.text}, from(begin));
      case TokenKind::IntLiteral:
        next();
        return make_pattern(Pattern::Const{Literal{t.int_value}}, from(begin));
      case TokenKind::FloatLiteral:
        next();
        return make_pattern(Pattern::Const{Literal{t.float_value}}, from(begin));
      case TokenKind::StringLiteral:
        next();
        return make_pattern(Pattern::Const{Literal{t.text}}, from(begin));
      case TokenKind::Keyword:
        if (t.text == "true" || t.text == "false") {
          next();
          return make_pattern(Pattern::Const{Literal{t.text == "true"}}, from(begin));
        }
        break;
      case TokenKind::Symbol:
        if (t.text == "_") {
          next();
          return make_pattern(Pattern::Wildcard{}, from(begin));
        }
        if (t.text == "-") {
          next();
          if (peek().kind == TokenKind::IntLiteral) {
            return make_pattern(Pattern::Const{Literal{-next().int_value}}, from(begin));
          }
          if (peek().kind == TokenKind::FloatLiteral) {
            return make_pattern(Pattern::Const{Literal{-next().float_value}}, from(begin));
          }
          fail("numeric literal");
        }
        if (t.text == "(") {
          next();
          if (accept_symbol(")")) return make_pattern(Pattern::Const{Literal{Unit{}}}, from(begin));
          PatternPtr inner = pattern();
          expect_symbol(")");
          return make_pattern(inner->node, from(begin));
        }
        if (t.text == "[") {
          next();
          std::vector<PatternPtr> elems;
          if (!accept_symbol("]")) {
            elems.push_back(pattern());
            while (accept_symbol(";")) {
              if (peek().is_symbol("]")) break;
              elems.push_back(pattern());
            }
            expect_symbol("]");
          }
          return make_pattern(Pattern::List{std::move(elems)}, from(begin));
        }
        break;
      default:
        break;
    }
    fail("pattern");
  }

  // -- types ----------------------------------------------------------------

  TypeExprPtr type() {
    const Position begin = here();
    TypeExprPtr from_ty = type_arrow();
    if (accept_symbol("=>")) {
      TypeExprPtr to = type_arrow();
      return make_type(TypeExpr::Handler{from_ty, to}, from(begin));
    }
    return from_ty;
  }

  TypeExprPtr type_arrow() {
    const Position begin = here();
    TypeExprPtr lhs = type_sum();
    if (accept_symbol("->")) {
      TypeExprPtr rhs = type_arrow();
      return make_type(TypeExpr::Arrow{lhs, rhs}, from(begin));
    }
    return lhs;
  }

  TypeExprPtr type_sum() {
    const Position begin = here();
    TypeExprPtr lhs = type_product();
    while (accept_symbol("+")) {
      TypeExprPtr rhs = type_product();
      lhs = make_type(TypeExpr::Sum{lhs, rhs}, from(begin));
    }
    return lhs;
  }

  TypeExprPtr type_product() {
    const Position begin = here();
    TypeExprPtr first = type_app();
    if (!peek().is_symbol("*")) return first;
    std::vector<TypeExprPtr> elems{first};
    while (accept_symbol("*")) elems.push_back(type_app());
    return make_type(TypeExpr::Product{std::move(elems)}, from(begin));
  }

  TypeExprPtr type_app() {
    const Position begin = here();
    TypeExprPtr t = type_atom();
    while (is_value_name(peek())) {
      std::string name = next().text;
      t = make_type(TypeExpr::Named{std::move(name), {t}}, from(begin));
    }
    return t;
  }

  TypeExprPtr type_atom() {
    const Position begin = here();
    if (peek().kind == TokenKind::TypeVariable) {
      return make_type(TypeExpr::Var{next().text}, from(begin));
    }
    if (is_value_name(peek())) {
      return make_type(TypeExpr::Named{next().text, {}}, from(begin));
    }
    if (accept_symbol("(")) {
      TypeExprPtr first = type();
      if (accept_symbol(")")) return make_type(first->node, from(begin));
      std::vector<TypeExprPtr> args{first};
      while (accept_symbol(",")) args.push_back(type());
      expect_symbol(")");
      if (!is_value_name(peek())) fail("type constructor");
      std::string name = next().text;
      return make_type(TypeExpr::Named{std::move(name), std::move(args)}, from(begin));
    }
    fail("type");
  }

  const std::vector<Token>& toks_;
  std::size_t i_ = 0;
  Position last_end_;
};

}  // namespace

Span span_of(const Item& item) {
  return std::visit(
      [](const auto& it) -> Span {
        using T = std::decay_t<decltype(it)>;
        if constexpr (std::is_same_v<T, TopTerm>) {
          return it.term->span;
        } else {
          return it.span;
        }
      },
      item);
}

std::vector<Item> parse_program(const std::vector<Token>& tokens) {
  return Parser(tokens).program();
}

std::vector<Item> parse_program(std::string_view source) {
  const auto tokens = tokenize(source);
  return Parser(tokens).program();
}

TermPtr parse_term(std::string_view source) {
  const auto tokens = tokenize(source);
  return Parser(tokens).whole_term();
}

TypeExprPtr parse_type(std::string_view source) {
  const auto tokens = tokenize(source);
  return Parser(tokens).whole_type();
}

}  // namespace eff::syntax
