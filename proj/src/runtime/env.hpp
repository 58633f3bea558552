#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "runtime/value.hpp"

namespace eff::runtime {

struct EnvNode {
  std::string_view name;  // points into the program text's AST
  Value value;
  std::shared_ptr<const EnvNode> next;
  ~EnvNode();
};

using Globals = std::map<std::string, Value, std::less<>>;

// Persistent environment: local bindings in a shared linked list in front of
// a snapshot of the globals taken when the environment was created.
class Env {
 public:
  Env() = default;
  explicit Env(std::shared_ptr<const Globals> globals) : globals_(std::move(globals)) {}

  Env bind(std::string_view name, Value v) const {
    Env e = *this;
    e.locals_ = std::make_shared<const EnvNode>(EnvNode{name, std::move(v), locals_});
    return e;
  }

  // Visits local bindings, innermost first.
  template <typename F>
  void each_local(F&& f) const {
    for (const EnvNode* n = locals_.get(); n != nullptr; n = n->next.get()) f(n->name, n->value);
  }

  const Value* lookup_global(std::string_view name) const {
    if (!globals_) return nullptr;
    auto it = globals_->find(name);
    return it == globals_->end() ? nullptr : &it->second;
  }

  const Value* lookup(std::string_view name) const {
    for (const EnvNode* n = locals_.get(); n != nullptr; n = n->next.get()) {
      if (n->name == name) return &n->value;
    }
    if (globals_) {
      auto it = globals_->find(name);
      if (it != globals_->end()) return &it->second;
    }
    return nullptr;
  }

 private:
  std::shared_ptr<const EnvNode> locals_;
  std::shared_ptr<const Globals> globals_;
};

}  // namespace eff::runtime
