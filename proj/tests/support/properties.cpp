#include "support/properties.hpp"

#include <cmath>
#include <functional>
#include <regex>
#include <set>

#include "desugar/core_printer.hpp"
#include "desugar/desugar.hpp"
#include "runtime/result.hpp"
#include "runtime/runtime.hpp"
#include "support/gen.hpp"
#include "syntax/parser.hpp"
#include "syntax/printer.hpp"
#include "typecheck/types.hpp"

namespace eff::testing {

using runtime::Cont;
using runtime::InstancePtr;
using runtime::Result;
using runtime::Runtime;
using runtime::Value;

// ---------------------------------------------------------------------------
// Harness

Harness::Harness(const std::string& prelude_dir, bool typecheck, Sequencing sequencing) {
  SessionOptions opts;
  opts.typecheck = typecheck;
  opts.sequencing = sequencing;
  opts.io.write = [this](std::string_view s) { output_.append(s); };
  opts.io.read_line = [] { return std::optional<std::string>(); };
  opts.warn = [this](const std::string&) { ++warnings_; };
  session_ = std::make_unique<Session>(std::move(opts));
  if (!prelude_dir.empty()) session_->load_prelude(prelude_dir);
}

Harness::Outcome Harness::eval(const std::string& source) {
  Outcome out;
  output_.clear();
  warnings_ = 0;
  try {
    session_->run_source(source, "case" + std::to_string(++run_), [&](const Echo& e) {
      out.value = runtime::to_string(e.value);
      out.type = e.type;
      out.raw = e.value;
      out.transcript += out.value + " : " + out.type + "\n";
    });
    out.ok = true;
  } catch (const types::TypeError& e) {
    out.type_error = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.output = output_;
  out.warnings = warnings_;
  return out;
}

namespace {

std::string describe(const Harness::Outcome& o) {
  if (o.ok) return o.value + " / output " + o.output;
  return (o.type_error ? "type error: " : "error: ") + o.error;
}

bool same_outcome(const Harness::Outcome& a, const Harness::Outcome& b) {
  return a.ok && b.ok && a.value == b.value && a.output == b.output;
}

// ---------------------------------------------------------------------------
// Results built directly from C++ closures

using Fn = std::function<Result(Runtime&, const Value&)>;

Value int_value(std::int64_t n) { return Value(n); }

struct Instances {
  InstancePtr handled;    // has a clause in the handler under test
  InstancePtr forwarded;  // never handled
};

Fn random_fn(Rng& rng, const Instances& in, int depth);

Cont random_cont(Rng& rng, const Instances& in, int depth) {
  Cont k = runtime::identity_cont();
  const int n = depth <= 0 ? 0 : rng.range(0, 2);
  for (int i = 0; i < n; ++i) {
    k = std::make_shared<runtime::BindCont>(
        k, std::make_shared<runtime::FnFrame>(random_fn(rng, in, depth - 1)));
  }
  return k;
}

Fn random_fn(Rng& rng, const Instances& in, int depth) {
  const std::int64_t m = rng.range(-3, 3);
  const std::int64_t c = rng.range(-5, 5);
  const int kind = depth <= 0 ? 0 : rng.below(3);
  InstancePtr inst = rng.chance(0.5) ? in.handled : in.forwarded;
  switch (kind) {
    case 0:
      return [m, c](Runtime&, const Value& v) { return Result(int_value(v.as_int() * m + c)); };
    case 1:
      return [inst, c](Runtime&, const Value& v) {
        return Result::operation(inst, "op", int_value(v.as_int() + c), runtime::identity_cont());
      };
    default: {
      Cont k = random_cont(rng, in, depth - 1);
      return [inst, k](Runtime&, const Value& v) { return Result::operation(inst, "op", v, k); };
    }
  }
}

const std::int64_t kProbes[] = {0, 1, 4};

std::string show(const Result& r) {
  if (r.is_value()) return runtime::to_string(r.value());
  return "#" + std::to_string(r.op().instance->id) + "#" + std::string(r.op().op) + " " +
         runtime::to_string(r.op().arg);
}

// Observational equality of results: same value, or the same operation whose
// continuations agree on a few probes (to a bounded depth).
bool same_result(Runtime& rt, const Result& a, const Result& b, int depth, std::string& why) {
  if (a.is_value() != b.is_value()) {
    why = show(a) + " vs " + show(b);
    return false;
  }
  if (a.is_value()) {
    if (runtime::equal(a.value(), b.value())) return true;
    why = show(a) + " vs " + show(b);
    return false;
  }
  const auto& x = a.op();
  const auto& y = b.op();
  if (x.instance->id != y.instance->id || x.op != y.op || !runtime::equal(x.arg, y.arg)) {
    why = show(a) + " vs " + show(b);
    return false;
  }
  if (depth <= 0) return true;
  for (std::int64_t w : kProbes) {
    if (!same_result(rt, x.k->resume(rt, int_value(w)), y.k->resume(rt, int_value(w)), depth - 1,
                     why)) {
      why = "after resuming with " + std::to_string(w) + ": " + why;
      return false;
    }
  }
  return true;
}

const char* kIntEffect = "type lift_effect = effect operation op : int -> int end\n";

}  // namespace

// ---------------------------------------------------------------------------
// Evaluator laws

PropertyReport prop_lifting(const PropertyConfig& cfg) {
  PropertyReport rep{"lifting equations"};
  Harness h("");
  h.eval(std::string(kIntEffect) + "let n1 = new lift_effect\nlet n2 = new lift_effect\n");
  Runtime& rt = h.session().runtime();
  Instances in{rt.global("n1")->as_instance(), rt.global("n2")->as_instance()};
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    Fn f = random_fn(rng, in, 3);
    auto frame = std::make_shared<runtime::FnFrame>(f);
    const Value v = int_value(rng.range(-9, 9));
    std::string why;
    // lift(f)(Value v) = f v
    if (!same_result(rt, rt.lift(frame, Result(v)), f(rt, v), 3, why)) {
      rep.fail("value case: " + why);
      continue;
    }
    // lift(f)(Op(n, op, v, k)) = Op(n, op, v, w ↦ lift(f)(k w))
    Cont k = random_cont(rng, in, 3);
    InstancePtr inst = rng.chance(0.5) ? in.handled : in.forwarded;
    Result lifted = rt.lift(frame, Result::operation(inst, "op", v, k));
    if (lifted.is_value() || lifted.op().instance->id != inst->id || lifted.op().op != "op" ||
        !runtime::equal(lifted.op().arg, v)) {
      rep.fail("operation case changed the operation: " + show(lifted));
      continue;
    }
    for (std::int64_t w : kProbes) {
      const Value wv = int_value(w);
      if (!same_result(rt, lifted.op().k->resume(rt, wv), rt.lift(frame, k->resume(rt, wv)), 3,
                       why)) {
        rep.fail("continuation at " + std::to_string(w) + ": " + why);
        break;
      }
    }
  }
  return rep;
}

PropertyReport prop_deep_handler(const PropertyConfig& cfg) {
  PropertyReport rep{"deep-handler forwarding law"};
  Harness h("");
  h.eval(std::string(kIntEffect) + "let n1 = new lift_effect\nlet n2 = new lift_effect\n");
  Runtime& rt = h.session().runtime();
  Instances in{rt.global("n1")->as_instance(), rt.global("n2")->as_instance()};
  Rng rng(cfg.seed ^ 0x5eed);
  const std::vector<std::string> op_bodies = {"k (x + A)", "k (k (x + A))", "k x + A", "A"};
  const std::vector<std::string> val_bodies = {"y", "y * B + A", "B"};
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    auto fill = [&](std::string s) {
      s = replace_word(s, "A", std::to_string(rng.range(0, 5)));
      return replace_word(s, "B", std::to_string(rng.range(-2, 2)));
    };
    const std::string src = "let h = handler | n1#op x k -> " + fill(rng.pick(op_bodies)) +
                            " | val y -> " + fill(rng.pick(val_bodies)) + "\n";
    auto o = h.eval(src);
    if (!o.ok) {
      rep.fail(src + ": " + o.error);
      continue;
    }
    auto handler = *rt.global("h")->get<runtime::HandlerPtr>();
    Cont k = random_cont(rng, in, 3);
    const Value v = int_value(rng.range(-9, 9));
    Result r = rt.apply_handler(handler, Result::operation(in.forwarded, "op", v, k));
    if (r.is_value() || r.op().instance->id != in.forwarded->id || r.op().op != "op" ||
        !runtime::equal(r.op().arg, v)) {
      rep.fail(src + ": forwarded operation changed: " + show(r));
      continue;
    }
    std::string why;
    for (std::int64_t w : kProbes) {
      const Value wv = int_value(w);
      if (!same_result(rt, r.op().k->resume(rt, wv), rt.apply_handler(handler, k->resume(rt, wv)),
                       3, why)) {
        rep.fail(src + ": continuation at " + std::to_string(w) + ": " + why);
        break;
      }
    }
  }
  return rep;
}

namespace {

ProgramOptions random_options(Rng& rng) {
  // Half of the cases are pure.
  if (rng.chance(0.5)) return ProgramOptions{false, false, false};
  return ProgramOptions{};
}

}  // namespace

PropertyReport prop_monad_left_identity(const PropertyConfig& cfg) {
  PropertyReport rep{"monad law: left identity"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 1);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()(), random_options(rng));
    const std::string e = gen.value();
    const std::string c = gen.comp(rng.range(1, 4), {"x"});
    const std::string lhs = observe("(let x = val " + e + " in " + c + ")");
    const std::string rhs = observe(replace_word(c, "x", e));
    auto a = h.eval(lhs);
    auto b = h.eval(rhs);
    if (!same_outcome(a, b)) rep.fail(lhs + "\n=> " + describe(a) + "\nvs\n" + rhs + "\n=> " + describe(b));
  }
  return rep;
}

PropertyReport prop_monad_right_identity(const PropertyConfig& cfg) {
  PropertyReport rep{"monad law: right identity"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 2);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()(), random_options(rng));
    const std::string c = gen.comp(rng.range(1, 4), {});
    const std::string lhs = observe("(let x = " + c + " in val x)");
    const std::string rhs = observe(c);
    auto a = h.eval(lhs);
    auto b = h.eval(rhs);
    if (!same_outcome(a, b)) rep.fail(lhs + "\n=> " + describe(a) + "\nvs\n" + rhs + "\n=> " + describe(b));
  }
  return rep;
}

PropertyReport prop_monad_associativity(const PropertyConfig& cfg) {
  PropertyReport rep{"monad law: associativity"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 3);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()(), random_options(rng));
    const std::string c1 = gen.comp(rng.range(0, 3), {});
    const std::string c2 = gen.comp(rng.range(0, 3), {"y"});
    const std::string c3 = gen.comp(rng.range(0, 3), {"x"});
    const std::string lhs = observe("(let x = (let y = " + c1 + " in " + c2 + ") in " + c3 + ")");
    const std::string rhs = observe("(let y = " + c1 + " in (let x = " + c2 + " in " + c3 + "))");
    auto a = h.eval(lhs);
    auto b = h.eval(rhs);
    if (!same_outcome(a, b)) rep.fail(lhs + "\n=> " + describe(a) + "\nvs\n" + rhs + "\n=> " + describe(b));
  }
  return rep;
}

PropertyReport prop_finally_decomposition(const PropertyConfig& cfg) {
  PropertyReport rep{"finally decomposition (state handler)"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 4);
  const std::string without_finally =
      "(handler | val y -> (fun s -> y) | r#lookup () k -> (fun s -> k s s)"
      " | r#update s' k -> (fun s -> k () s'))";
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()(), ProgramOptions{true, false, rng.chance(0.5)});
    const std::string c = gen.comp(rng.range(1, 4), {});
    const std::string x0 = gen.value();
    const std::string lhs =
        "let r = new ref in with accumulate handle with state r " + x0 + " handle " + c;
    const std::string rhs = "let r = new ref in with accumulate handle (let f = (with " +
                            without_finally + " handle " + c + ") in f " + x0 + ")";
    auto a = h.eval(lhs);
    auto b = h.eval(rhs);
    if (!same_outcome(a, b)) rep.fail(lhs + "\n=> " + describe(a) + "\nvs\n" + rhs + "\n=> " + describe(b));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Syntax

PropertyReport prop_round_trip(const PropertyConfig& cfg) {
  PropertyReport rep{"parse/print round trip"};
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    SurfaceGen gen(cfg.seed * 31 + i);
    syntax::TermPtr t = gen.term(1 + i % 5);
    const std::string printed = syntax::print_term(*t);
    try {
      syntax::TermPtr back = syntax::parse_term(printed);
      if (syntax::dump_term(*back) != syntax::dump_term(*t)) {
        rep.fail(printed + "\nexpected " + syntax::dump_term(*t) + "\ngot      " +
                 syntax::dump_term(*back));
      }
    } catch (const std::exception& e) {
      rep.fail(printed + "\n" + e.what());
    }
  }
  return rep;
}

PropertyReport prop_desugar_idempotence(const PropertyConfig& cfg) {
  PropertyReport rep{"desugar idempotence"};
  Rng rng(cfg.seed + 5);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    syntax::TermPtr t;
    std::string label;
    if (i % 2 == 0) {
      t = SurfaceGen(cfg.seed * 17 + i).term(1 + i % 5);
      label = syntax::print_term(*t);
    } else {
      ProgramGen gen(rng.engine()());
      label = observe(gen.comp(rng.range(1, 4), {}));
      t = syntax::parse_term(label);
    }
    try {
      auto once = desugar::desugar(*t);
      auto twice = desugar::desugar(*core::to_surface(*once.comp));
      if (core::dump_comp(*twice.comp) != core::dump_comp(*once.comp)) {
        rep.fail(label + "\nfirst  " + core::dump_comp(*once.comp) + "\nsecond " +
                 core::dump_comp(*twice.comp));
      } else if (!twice.diagnostics.empty()) {
        rep.fail(label + "\nsecond pass reported " + twice.diagnostics[0].message);
      }
    } catch (const std::exception& e) {
      rep.fail(label + "\n" + e.what());
    }
  }
  return rep;
}

namespace {

void for_each_child(const syntax::Term& t, const std::function<void(const syntax::Term&)>& f) {
  using namespace syntax;
  auto each = [&](const TermPtr& p) {
    if (p) f(*p);
  };
  auto clauses = [&](const HandlerClauses& h) {
    for (const auto& c : h.ops) {
      each(c.instance);
      each(c.body);
    }
    if (h.val) each(h.val->body);
    if (h.finally) each(h.finally->body);
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Term::Tuple> || std::is_same_v<N, Term::List>) {
          for (const auto& e : n.elems) each(e);
        } else if constexpr (std::is_same_v<N, Term::Construct>) {
          each(n.arg);
        } else if constexpr (std::is_same_v<N, Term::Cons>) {
          each(n.head);
          each(n.tail);
        } else if constexpr (std::is_same_v<N, Term::Fun>) {
          each(n.body);
        } else if constexpr (std::is_same_v<N, Term::Function>) {
          for (const auto& c : n.cases) each(c.body);
        } else if constexpr (std::is_same_v<N, Term::Project>) {
          each(n.instance);
        } else if constexpr (std::is_same_v<N, Term::HandlerLit>) {
          clauses(n.clauses);
        } else if constexpr (std::is_same_v<N, Term::App>) {
          each(n.fn);
          each(n.arg);
        } else if constexpr (std::is_same_v<N, Term::LogicOp>) {
          each(n.lhs);
          each(n.rhs);
        } else if constexpr (std::is_same_v<N, Term::Let> || std::is_same_v<N, Term::LetRec>) {
          for (const auto& b : n.bindings) each(b.value);
          each(n.body);
        } else if constexpr (std::is_same_v<N, Term::If>) {
          each(n.cond);
          each(n.then_branch);
          each(n.else_branch);
        } else if constexpr (std::is_same_v<N, Term::Match>) {
          each(n.scrutinee);
          for (const auto& c : n.cases) each(c.body);
        } else if constexpr (std::is_same_v<N, Term::New>) {
          if (n.resource) {
            each(n.resource->initial);
            for (const auto& c : n.resource->clauses) each(c.body);
          }
        } else if constexpr (std::is_same_v<N, Term::WithHandle>) {
          each(n.handler);
          each(n.body);
        } else if constexpr (std::is_same_v<N, Term::HandleInline>) {
          each(n.body);
          clauses(n.clauses);
        } else if constexpr (std::is_same_v<N, Term::Seq>) {
          each(n.first);
          each(n.second);
        } else if constexpr (std::is_same_v<N, Term::For>) {
          each(n.from);
          each(n.to);
          each(n.body);
        } else if constexpr (std::is_same_v<N, Term::While>) {
          each(n.cond);
          each(n.body);
        } else if constexpr (std::is_same_v<N, Term::ValOf>) {
          each(n.expr);
        } else if constexpr (std::is_same_v<N, Term::Annot>) {
          each(n.term);
        }
      },
      t.node);
}

// Breaks some spaces outside string literals into newlines.
std::string reflow(const std::string& s, Rng& rng) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < s.size()) {
        out += s[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') in_string = true;
    out += (c == ' ' && rng.chance(0.15)) ? std::string("\n  ") : std::string(1, c);
  }
  return out;
}

}  // namespace

PropertyReport prop_spans(const PropertyConfig& cfg) {
  PropertyReport rep{"term spans lie within the input"};
  Rng rng(cfg.seed + 6);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    const std::string src = reflow(syntax::print_term(*SurfaceGen(cfg.seed * 7 + i).term(1 + i % 5)), rng);
    Position extent;
    for (char c : src) {
      if (c == '\n') {
        ++extent.line;
        extent.column = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++extent.column;
      }
    }
    try {
      syntax::TermPtr t = syntax::parse_term(src);
      std::string bad;
      std::function<void(const syntax::Term&)> check = [&](const syntax::Term& n) {
        const Span& s = n.span;
        if (bad.empty() && (s.begin < Position{} || s.end < s.begin || extent < s.end)) {
          bad = syntax::dump_term(n) + " at " + to_string(s.begin) + "-" + to_string(s.end);
        }
        for_each_child(n, check);
      };
      check(*t);
      if (!bad.empty()) rep.fail(src + "\n" + bad);
    } catch (const std::exception& e) {
      rep.fail(src + "\n" + e.what());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Instances

PropertyReport prop_instance_freshness(const PropertyConfig& cfg) {
  PropertyReport rep{"instance freshness"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 7);
  static const std::regex id_re(R"(#([0-9]+)>)");
  const std::vector<std::string> makers = {"new choice", "new ref", "new random", "ref 0"};
  std::set<long long> seen;
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    const int decisions = rng.range(0, 3);
    const int n = rng.range(1, 4);
    const std::string maker = rng.pick(makers);
    std::string src = "let c = new choice in with choose_all c handle (";
    for (int d = 0; d < decisions; ++d) src += "let b" + std::to_string(d) + " = c#decide () in ";
    if (rng.chance(0.5)) {
      src += "[";
      for (int j = 0; j < n; ++j) src += (j ? "; " : "") + maker;
      src += "]";
    } else {
      src += "let rec mk n = if n = 0 then [] else (" + maker + ") :: mk (n - 1) in mk " +
             std::to_string(n);
    }
    src += ")";
    auto o = h.eval(src);
    if (!o.ok) {
      rep.fail(src + "\n" + describe(o));
      continue;
    }
    std::vector<long long> ids;
    for (std::sregex_iterator it(o.value.begin(), o.value.end(), id_re), end; it != end; ++it) {
      ids.push_back(std::stoll((*it)[1]));
    }
    const std::size_t expected = static_cast<std::size_t>(n) << decisions;
    bool increasing = true;
    for (std::size_t j = 1; j < ids.size(); ++j) increasing = increasing && ids[j - 1] < ids[j];
    bool fresh = true;
    for (long long id : ids) fresh = seen.insert(id).second && fresh;
    if (ids.size() != expected || !increasing || !fresh) {
      rep.fail(src + "\n=> " + o.value + "\nexpected " + std::to_string(expected) +
               " fresh increasing ids");
    }
  }
  rep.note = std::to_string(seen.size()) + " distinct ids";
  return rep;
}

// ---------------------------------------------------------------------------
// Type checker

PropertyReport prop_soundness(const PropertyConfig& cfg) {
  PropertyReport rep{"accepted programs never go wrong"};
  Harness typed(cfg.prelude_dir);
  Harness untyped(cfg.prelude_dir, false);
  Rng rng(cfg.seed + 8);
  static const std::regex literal(R"((^|[^A-Za-z0-9_'])([0-9]+)\b)");
  const std::vector<std::string> junk = {"true", "\"s\"", "()", "[]", "(fun q -> q)", "c",
                                         "r", "(1, 2)", "1.5", "[1]", "(r#lookup ())"};
  int rejected = 0, mutated_accepted = 0, went_wrong_untyped = 0;
  for (int attempt = 0; rep.cases < cfg.cases && attempt < cfg.cases * 20; ++attempt) {
    ProgramGen gen(rng.engine()());
    std::string body = gen.comp(rng.range(1, 4), {});
    bool mutated = false;
    if (rng.chance(0.7)) {
      std::vector<std::size_t> spots;
      for (std::sregex_iterator it(body.begin(), body.end(), literal), end; it != end; ++it) {
        const auto at = static_cast<std::size_t>(it->position(2));
        // Leave loop decrements alone so that every run terminates.
        if (at >= 2 && body.compare(at - 2, 2, "- ") == 0) continue;
        spots.push_back(at);
      }
      if (!spots.empty()) {
        const std::size_t at = spots[rng.below(static_cast<int>(spots.size()))];
        std::size_t len = 0;
        while (at + len < body.size() && std::isdigit(static_cast<unsigned char>(body[at + len]))) ++len;
        body = body.substr(0, at) + rng.pick(junk) + body.substr(at + len);
        mutated = true;
      }
    }
    const std::string src = observe(body);
    auto o = typed.eval(src);
    if (o.type_error) {
      ++rejected;
      if (untyped.eval(src).error.find("ill-formed") != std::string::npos) ++went_wrong_untyped;
      continue;
    }
    ++rep.cases;
    if (mutated) ++mutated_accepted;
    if (!o.ok && o.error.find("ill-formed") != std::string::npos) rep.fail(src + "\n" + o.error);
  }
  rep.note = std::to_string(rejected) + " rejected (" + std::to_string(went_wrong_untyped) +
             " of them go wrong unchecked), " + std::to_string(mutated_accepted) +
             " mutated programs accepted";
  return rep;
}

PropertyReport prop_alpha_renaming(const PropertyConfig& cfg) {
  PropertyReport rep{"inference is stable under alpha renaming"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 9);
  const std::vector<std::string> prefixes = {"w", "map", "zz", "x", "acc_"};
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()());
    const std::string body = gen.comp(rng.range(1, 3), {});
    const std::string src =
        "let v900 = fun v901 -> v901 in let v902 = fun v903 v904 -> (v904, v903) in (" +
        observe(body) + ", v902 v900, fun v905 -> v902 v905 v900)";
    const std::string renamed = rename_binders(src, rng.pick(prefixes));
    auto a = h.eval(src);
    auto b = h.eval(renamed);
    if (!a.ok || !b.ok || a.type != b.type || a.value != b.value) {
      rep.fail(src + "\n=> " + describe(a) + " : " + a.type + "\nrenamed\n" + renamed + "\n=> " +
               describe(b) + " : " + b.type);
    }
  }
  return rep;
}

PropertyReport prop_generalization(const PropertyConfig& cfg) {
  PropertyReport rep{"generalization iff the binding is an expression"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 10);
  // Identity functions written as expressions...
  const std::vector<std::string> bodies = {"v", "val v", "(fun w -> w) v", "let w = v in w",
                                           "if true then v else v", "match v with w -> w",
                                           "fst (v, 1)"};
  std::function<std::string(int)> identity_value = [&](int depth) -> std::string {
    if (depth <= 0 || rng.chance(0.4)) return "(fun v -> " + rng.pick(bodies) + ")";
    switch (rng.below(2)) {
      case 0: return "(fun v -> " + identity_value(depth - 1) + " v)";
      default: return "(fun v -> let g = " + identity_value(depth - 1) + " in g v)";
    }
  };
  // ...and computations that produce one.
  std::function<std::string(int)> identity_comp = [&](int depth) -> std::string {
    switch (rng.below(5)) {
      case 0: return "((fun w -> w) " + identity_value(depth) + ")";
      case 1: return "(let g = " + identity_value(depth) + " in g)";
      case 2: return "(if true then " + identity_value(depth) + " else " + identity_value(depth) + ")";
      case 3: return "(match 0 with _ -> " + identity_value(depth) + ")";
      default: return "(fst (" + identity_value(depth) + ", 0))";
    }
  };
  int accepted = 0;
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    const bool expression = rng.chance(0.5);
    const std::string bound = expression ? identity_value(2) : identity_comp(2);
    const bool is_expr = desugar::is_expression(*syntax::parse_term(bound));
    const std::string src = "let f = " + bound + " in (f 1, f true)";
    auto o = h.eval(src);
    if (is_expr != expression) {
      rep.fail(bound + ": is_expression disagrees with the generator");
    } else if (o.ok != is_expr) {
      rep.fail(src + "\n=> " + describe(o));
    } else if (o.ok && (o.value != "(1, true)" || o.type != "int * bool")) {
      rep.fail(src + "\n=> " + o.value + " : " + o.type);
    }
    accepted += o.ok;
  }
  rep.note = std::to_string(accepted) + " accepted";
  return rep;
}

// ---------------------------------------------------------------------------
// Driver-level invariants

PropertyReport prop_determinism(const PropertyConfig& cfg) {
  PropertyReport rep{"runs are deterministic"};
  Rng rng(cfg.seed + 11);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()());
    const std::string src =
        "let r = new ref in let c = new choice in with choose_all c handle with state r 0 handle " +
        gen.comp(rng.range(1, 4), {}) + "\n;;\nnew choice\n;;\nlet r = ref 3 in r := 4; !r\n";
    Harness a(cfg.prelude_dir);
    Harness b(cfg.prelude_dir);
    auto x = a.eval(src);
    auto y = b.eval(src);
    if (!x.ok || x.transcript != y.transcript || x.output != y.output) {
      rep.fail(src + "\n=> " + x.transcript + x.output + "\nvs\n" + y.transcript + y.output);
    }
  }
  return rep;
}

PropertyReport prop_sequencing_orthogonality(const PropertyConfig& cfg) {
  PropertyReport rep{"sequencing mode never changes results"};
  Harness silent(cfg.prelude_dir, true, Sequencing::Silent);
  Harness warn(cfg.prelude_dir, true, Sequencing::Warn);
  Rng rng(cfg.seed + 12);
  int warned = 0;
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    ProgramGen gen(rng.engine()());
    const std::string src = observe(gen.comp(rng.range(1, 4), {}));
    auto a = silent.eval(src);
    auto b = warn.eval(src);
    if (!same_outcome(a, b) || a.type != b.type || a.warnings != 0) {
      rep.fail(src + "\n=> " + describe(a) + "\nvs\n" + describe(b));
    }
    warned += b.warnings > 0;
  }
  rep.note = std::to_string(warned) + " programs produced sequencing warnings";
  return rep;
}

// ---------------------------------------------------------------------------
// Prelude

PropertyReport prop_ref_laws(const PropertyConfig& cfg) {
  PropertyReport rep{"ref laws"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 13);
  // (source, printed) pairs of one type each.
  const std::vector<std::vector<std::pair<std::string, std::string>>> pools = {
      {{"0", "0"}, {"42", "42"}, {"(-7)", "-7"}, {"1000000", "1000000"}},
      {{"\"\"", "\"\""}, {"\"ab\"", "\"ab\""}, {"\"x y\"", "\"x y\""}},
      {{"[]", "[]"}, {"[1; 2]", "[1; 2]"}, {"[3]", "[3]"}},
      {{"(1, true)", "(1, true)"}, {"(0, false)", "(0, false)"}},
  };
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    const auto& pool = rng.pick(pools);
    const auto& v = rng.pick(pool);
    const auto& w = rng.pick(pool);
    const auto& u = rng.pick(pool);
    auto expect = [&](const std::string& src, const std::string& want) {
      auto o = h.eval(src);
      if (!o.ok || o.value != want) rep.fail(src + "\n=> " + describe(o) + ", expected " + want);
    };
    switch (i % 3) {
      case 0: expect("!(ref " + v.first + ")", v.second); break;
      case 1: expect("let r = ref " + v.first + " in r := " + w.first + "; !r", w.second); break;
      default:
        expect("let a = ref " + v.first + " in let b = ref " + w.first + " in a := " + u.first +
                   "; (!a, !b)",
               "(" + u.second + ", " + w.second + ")");
    }
  }
  return rep;
}

PropertyReport prop_distribution(const PropertyConfig& cfg) {
  PropertyReport rep{"distribution yields probability distributions"};
  Harness h(cfg.prelude_dir);
  Rng rng(cfg.seed + 14);
  for (int i = 0; i < cfg.cases; ++i, ++rep.cases) {
    std::string body = "0";
    const int steps = rng.range(1, 4);
    for (int s = 0; s < steps; ++s) {
      const int k = rng.range(1, 3);
      std::vector<int> weights;
      int total = 0;
      for (int j = 0; j < k; ++j) total += weights.emplace_back(rng.range(1, 9));
      std::string choices = "[";
      for (int j = 0; j < k; ++j) {
        choices += (j ? "; (" : "(") + std::to_string(rng.range(-2, 2)) + ", " +
                   std::to_string(weights[j]) + ".0 /. " + std::to_string(total) + ".0)";
      }
      choices += "]";
      body = "(let x = " + body + " in let d = r#pick " + choices + " in x + d)";
    }
    const std::string src = "let r = new random in with distribution r handle " + body;
    auto o = h.eval(src);
    if (!o.ok) {
      rep.fail(src + "\n" + describe(o));
      continue;
    }
    double sum = 0;
    bool ok = true;
    auto entries = runtime::list_elements(o.raw);
    for (std::size_t a = 0; a < entries.size(); ++a) {
      const auto& pair = (*entries[a].get<runtime::TuplePtr>())->elems;
      const double p = pair[1].as_float();
      ok = ok && p >= 0;
      sum += p;
      for (std::size_t b = 0; b < a; ++b) {
        ok = ok && !runtime::equal(pair[0], (*entries[b].get<runtime::TuplePtr>())->elems[0]);
      }
    }
    if (!ok || std::fabs(sum - 1.0) > 1e-9) rep.fail(src + "\n=> " + o.value);
  }
  return rep;
}

// ---------------------------------------------------------------------------

const std::vector<NamedProperty>& core_properties() {
  static const std::vector<NamedProperty> props = {
      {"lifting", prop_lifting},
      {"monad-left-identity", prop_monad_left_identity},
      {"monad-right-identity", prop_monad_right_identity},
      {"monad-associativity", prop_monad_associativity},
      {"deep-handler", prop_deep_handler},
      {"finally-decomposition", prop_finally_decomposition},
      {"round-trip", prop_round_trip},
      {"desugar-idempotence", prop_desugar_idempotence},
      {"instance-freshness", prop_instance_freshness},
  };
  return props;
}

const std::vector<NamedProperty>& extra_properties() {
  static const std::vector<NamedProperty> props = {
      {"spans", prop_spans},
      {"soundness", prop_soundness},
      {"alpha-renaming", prop_alpha_renaming},
      {"generalization", prop_generalization},
      {"determinism", prop_determinism},
      {"sequencing-orthogonality", prop_sequencing_orthogonality},
      {"ref-laws", prop_ref_laws},
      {"distribution", prop_distribution},
  };
  return props;
}

}  // namespace eff::testing
