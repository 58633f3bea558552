#include "runtime/runtime.hpp"

#include "runtime/stack.hpp"

namespace eff::runtime {
namespace {

std::shared_ptr<const Resource> channel_resource() {
  auto res = std::make_shared<Resource>();
  res->clauses.emplace_back("write", [](Runtime& rt, const Value& arg, const Value& state) {
    if (rt.io().write) rt.io().write(arg.as_string());
    return Result(make_tuple({kUnit, state}));
  });
  res->clauses.emplace_back("read", [](Runtime& rt, const Value&, const Value& state) {
    std::optional<std::string> line;
    if (rt.io().read_line) line = rt.io().read_line();
    if (!line) throw RuntimeError("end of input", "std#read reached the end of standard input");
    return Result(make_tuple({Value(std::move(*line)), state}));
  });
  return res;
}

std::string describe(const Instance& inst) {
  return "<" + inst.label + " #" + std::to_string(inst.id) + ">";
}

}  // namespace

Runtime::Runtime(Io io) : globals_(std::make_shared<Globals>()), io_(std::move(io)) {
  for (const auto& def : builtin_definitions()) {
    (*globals_)[def.name] = builtin_value(def.name);
  }
  auto std_instance = std::make_shared<const Instance>(Instance{0, "channel", channel_resource()});
  store_[0] = kUnit;
  (*globals_)["std"] = Value(InstancePtr(std_instance));
}

void Runtime::set_global(const std::string& name, Value v) {
  // Environments captured earlier keep their own snapshot.
  if (globals_.use_count() > 1) globals_ = std::make_shared<Globals>(*globals_);
  (*globals_)[name] = std::move(v);
}

const Value* Runtime::global(std::string_view name) const {
  auto it = globals_->find(name);
  return it == globals_->end() ? nullptr : &it->second;
}

const Value* Runtime::state_of(std::int64_t instance) const {
  auto it = store_.find(instance);
  return it == store_.end() ? nullptr : &it->second;
}

Value Runtime::builtin_value(const std::string& name) const {
  const BuiltinDef* def = find_builtin(name);
  if (!def) throw RuntimeError("ill-formed value", "unknown primitive " + name);
  return Value(std::make_shared<const BuiltinValue>(BuiltinValue{def, {}, nullptr, {}}));
}

Value Runtime::new_instance(std::string label, std::shared_ptr<const Resource> resource, Value initial) {
  const std::int64_t id = next_instance_++;
  if (resource) store_[id] = std::move(initial);
  return Value(std::make_shared<const Instance>(Instance{id, std::move(label), std::move(resource)}));
}

Value Runtime::toplevel(Result r) {
  for (;;) {
    if (r.is_value()) return r.value();
    const Operation op = r.op();
    const Instance& inst = *op.instance;
    const ResourceFn* clause = inst.resource ? inst.resource->find(op.op) : nullptr;
    const std::string name = describe(inst) + "#" + std::string(op.op);
    if (!clause) throw RuntimeError("uncaught operation", name);
    Result answer = (*clause)(*this, op.arg, store_[inst.id]);
    if (!answer.is_value()) {
      throw RuntimeError("resource error", "the resource clause for " + name + " performed operation " +
                                               describe(*answer.op().instance) + "#" +
                                               std::string(answer.op().op));
    }
    const auto* pair = answer.value().get<TuplePtr>();
    if (!pair || (*pair)->elems.size() != 2) {
      throw RuntimeError("resource error", "the resource clause for " + name + " did not return a pair");
    }
    store_[inst.id] = (*pair)->elems[1];
    r = op.k->resume(*this, (*pair)->elems[0]);
  }
}

Value Runtime::run(const core::Comp& c) { return toplevel(eval_comp(global_env(), &c)); }

void Runtime::define(const core::Define& d) {
  const Env env = global_env();
  std::vector<Value> values;
  for (const auto& [pattern, comp] : d.bindings) values.push_back(toplevel(eval_comp(env, comp.get())));
  Env bound;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!match(*d.bindings[i].first, values[i], bound)) {
      throw RuntimeError("match failure", "the value does not match the pattern", d.bindings[i].first->span);
    }
  }
  std::vector<std::pair<std::string, Value>> names;
  bound.each_local([&](std::string_view name, const Value& v) { names.emplace_back(name, v); });
  for (auto it = names.rbegin(); it != names.rend(); ++it) set_global(it->first, it->second);
}

void Runtime::define_rec(const core::DefineRec& d) {
  auto group = std::make_shared<const RecGroup>(RecGroup{&d.bindings, global_env()});
  for (const auto& [name, fn] : d.bindings) {
    const auto& lam = std::get<core::Expr::Lambda>(fn->node);
    set_global(name, Value(std::make_shared<const Closure>(
                         Closure{lam.param.get(), lam.body.get(), group->env, group})));
  }
}

}  // namespace eff::runtime
