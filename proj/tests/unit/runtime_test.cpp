#include <doctest.h>

#include <string>

#include "session/session.hpp"
#include "typecheck/infer.hpp"

using namespace eff;
using runtime::RuntimeError;

namespace {

struct Run {
  std::string output;
  std::vector<std::string> echoes;
};

Run run(const std::string& src, bool typecheck = true) {
  Run r;
  SessionOptions opts;
  opts.typecheck = typecheck;
  opts.sequencing = Sequencing::Silent;
  opts.io.write = [&](std::string_view s) { r.output += s; };
  Session s(opts);
  s.run_source(src, "test.eff", [&](const Echo& e) {
    r.echoes.push_back(runtime::to_string(e.value) + (e.type.empty() ? "" : " : " + e.type));
  });
  return r;
}

std::string last(const std::string& src, bool typecheck = true) {
  auto r = run(src, typecheck);
  REQUIRE(!r.echoes.empty());
  return r.echoes.back();
}

std::string runtime_error(const std::string& src) {
  try {
    run(src);
  } catch (const RuntimeError& e) {
    return e.what();
  }
  return "no error";
}

const char* kChoice = R"(
type choice = effect operation decide : unit -> bool end
let choose_all d = handler
  | d#decide () k -> k true @ k false
  | val x -> [x]
let c = new choice
)";

}  // namespace

TEST_CASE("basic evaluation") {
  CHECK(last("1 + 2") == "3 : int");
  CHECK(last("let x = 2 in x * 21") == "42 : int");
  CHECK(last("(1, (2, ()))") == "(1, (2, ())) : int * (int * unit)");
  CHECK(last("[1; 2] @ [3]") == "[1; 2; 3] : int list");
  CHECK(last("let f x = x in (f 1, f true)") == "(1, true) : int * bool");
  CHECK(last("\"a\\nb\"") == "\"a\\nb\" : string");
  CHECK(last("1.5 +. 2.0") == "3.5 : float");
  CHECK(last("let x = 5 in - x") == "-5 : int");
  CHECK(last("type 'a option = None | Some of 'a;; Some (-3)") == "Some (-3) : int option");
  CHECK(last("let rec fact n = if n = 0 then 1 else n * fact (n - 1) in fact 20") ==
        "2432902008176640000 : int");
  CHECK(last("match [1; 2; 3] with | [] -> 0 | x :: _ -> x") == "1 : int");
  CHECK(last("(1, \"b\") < (1, \"c\")") == "true : bool");
  CHECK(last("string_concat (string_of_float 0.1) (string_of_int 2)") == "\"0.12\" : string");
}

TEST_CASE("choice") {
  const std::string decls = kChoice;
  CHECK(last(decls + R"(;;
handle
  let x = (if c#decide () then 10 else 20) in
  let y = (if c#decide () then 0 else 5) in
    x - y
with
| c#decide () k -> k true)") == "10 : int");
  CHECK(last(decls + R"(;;
with choose_all c handle
  let x = (if c#decide () then 10 else 20) in
  let y = (if c#decide () then 0 else 5) in
    x - y)") == "[10; 5; 20; 15] : int list");
  CHECK(last(decls + R"(;;
let c1 = new choice in
let c2 = new choice in
  with choose_all c1 handle
  with choose_all c2 handle
    let x = (if c1#decide () then 10 else 20) in
    let y = (if c2#decide () then 0 else 5) in
      x - y)") == "[[10; 5]; [20; 15]] : int list list");
  CHECK(last(decls + R"(;;
let c1 = new choice in
let c2 = new choice in
  with choose_all c2 handle
  with choose_all c1 handle
    let y = (if c2#decide () then 0 else 5) in
    let x = (if c1#decide () then 10 else 20) in
      x - y)") == "[[10; 20]; [5; 15]] : int list list");
  const std::string err = runtime_error(decls + R"(;;
let x = (if c#decide () then 10 else 20) in
let y = (if c#decide () then 0 else 5) in
  x - y)");
  CHECK(err.find("uncaught operation") != std::string::npos);
  CHECK(err.find("#decide") != std::string::npos);
}

TEST_CASE("resources and toplevel") {
  const std::string ref = R"(
type 'a ref = effect operation lookup : unit -> 'a operation update : 'a -> unit end
let ref x = new ref @ x with
  operation lookup () @ s -> (s, s)
  operation update s' @ _ -> ((), s')
end
let (!) r = r#lookup ()
let (:=) r v = r#update v
)";
  CHECK(last(ref + ";; let r = ref 5 in r := 10; !r") == "10 : int");
  CHECK(last(ref + ";; let r = ref 1 in let s = ref 2 in r := 7; (!r, !s)") == "(7, 2) : int * int");
  // The store is not captured by continuations.
  CHECK(last(ref + ";; let r = ref 0 in (handle (r := !r + 1; 0) with | std#write _ k -> k ()); !r") ==
        "1 : int");
  auto out = run("std#write \"hi\"; std#write \"!\"");
  CHECK(out.output == "hi!");
  CHECK(out.echoes.back() == "() : unit");
  const std::string bad = R"(
type t = effect operation get : unit -> int end
type choice = effect operation decide : unit -> bool end
let c = new choice
let i = new t @ 0 with operation get () @ s -> (if c#decide () then (1, s) else (2, s)) end
;; i#get ())";
  CHECK(runtime_error(bad).find("resource error") != std::string::npos);
}

TEST_CASE("lazy evaluation writes once") {
  const std::string src = R"(
type 'a lazy = effect operation force : unit -> 'a end
type 'a deferred = Value of 'a | Thunk of (unit -> 'a)
let lazy t =
  new lazy @ (Thunk t) with
    operation force () @ v ->
      (match v with
        | Value v -> (v, Value v)
        | Thunk t -> let v = t () in (v, Value v))
  end
let force d = d#force ()
;; let d = lazy (fun () -> 7) in force d + force d)";
  CHECK(last(src) == "14 : int");
  const std::string effectful = R"(
type 'a lazy = effect operation force : unit -> 'a end
let lazy t = new lazy @ t with operation force () @ t -> (t (), t) end
;; let d = lazy (fun () -> std#write "x"; 7) in d#force ())";
  CHECK(runtime_error(effectful).find("resource error") != std::string::npos);
}

TEST_CASE("handlers: io, finally, delimited control") {
  CHECK(last(R"(
let accumulate = handler
  | std#write x k -> let (v, xs) = k () in (v, x :: xs)
  | val v -> (v, [])
;; with accumulate handle
  std#write "hello"; std#write "world"; 3 * 14)") == "(42, [\"hello\"; \"world\"]) : int * string list");
  CHECK(last(R"(
type ('a, 'b) delimited = effect operation shift : (('a -> 'b) -> 'b) -> 'a end
let rec reset d = handler
  | d#shift f k -> with reset d handle (f k)
;; let d = new delimited in with reset d handle (d#shift (fun k -> k (k (k 7)))) * 2 + 1)") ==
        "63 : int");
  CHECK(last(R"(
type 'a ref = effect operation lookup : unit -> 'a operation update : 'a -> unit end
let state r x = handler
  | val y -> (fun s -> y)
  | r#lookup () k -> (fun s -> k s s)
  | r#update s' k -> (fun s -> k () s')
  | finally f -> f x
;; let r = new ref in with state r 10 handle (let a = r#lookup () in r#update (a + 5); r#lookup ()))") ==
        "15 : int");
  // The last of two clauses for the same operation wins when types are off.
  CHECK(last("handle std#write \"a\" with | std#write _ k -> 1 | std#write _ k -> 2", false) == "2");
}

TEST_CASE("errors") {
  CHECK(runtime_error("1 / 0").find("division by zero") != std::string::npos);
  CHECK(runtime_error("4611686018427387904 * 2").find("integer overflow") != std::string::npos);
  CHECK(runtime_error("let f = fun x -> x in f = f").find("ill-formed value") != std::string::npos);
  CHECK(runtime_error("match 3 with | 1 -> 0").find("match failure") != std::string::npos);
  CHECK(std::string(RuntimeError("k", "d").what()) == "k: d");
  // Without types, a tag mismatch reaches the evaluator.
  try {
    run("1 + true", false);
    FAIL("expected an error");
  } catch (const RuntimeError& e) {
    CHECK(e.kind() == "ill-formed value");
  }
}

TEST_CASE("deep recursion and long loops") {
  CHECK(last("let rec sum n = if n = 0 then 0 else n + sum (n - 1) in sum 100000") == "5000050000 : int");
  CHECK(last("let rec count n acc = if n = 0 then acc else count (n - 1) (acc + 1) in count 300000 0") ==
        "300000 : int");
  CHECK(last("let rec build n acc = if n = 0 then acc else build (n - 1) (n :: acc) in "
             "match build 200000 [] with | x :: _ -> x | [] -> 0") == "1 : int");
  // A loop performing a handled operation on every iteration.
  CHECK(last(R"(
let count = handler
  | std#write _ k -> (fun n -> k () (n + 1))
  | val _ -> (fun n -> n)
;; (with count handle (for i = 1 to 100000 do std#write "x" done)) 0)") == "100000 : int");
  std::string lets = "let x0 = 0 in ";
  for (int i = 1; i <= 100000; ++i) {
    lets += "let x" + std::to_string(i) + " = x" + std::to_string(i - 1) + " + 1 in ";
  }
  lets += "x100000";
  CHECK(last(lets, false) == "100000");
  CHECK(runtime_error("let rec f n = 1 + f n in f 0").find("stack exhausted") != std::string::npos);
}

TEST_CASE("builtins match the checker's signatures") {
  std::set<std::string> runtime_names, checker_names;
  for (const auto& d : runtime::builtin_definitions()) runtime_names.insert(d.name);
  for (const auto& s : typecheck::builtin_signatures()) checker_names.insert(s.name);
  CHECK(runtime_names == checker_names);
}
