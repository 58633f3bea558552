#pragma once

#include <memory>
#include <string_view>

#include "runtime/value.hpp"

namespace eff::runtime {

struct Operation {
  InstancePtr instance;
  std::string_view op;  // static or AST-owned
  Value arg;
  Cont k;
};

// Either a value or an operation suspended with its continuation.
class Result {
 public:
  Result(Value v) : value_(std::move(v)) {}
  static Result operation(InstancePtr instance, std::string_view op, Value arg, Cont k) {
    Result r{Value{}};
    r.op_ = std::make_shared<const Operation>(Operation{std::move(instance), op, std::move(arg), std::move(k)});
    return r;
  }

  bool is_value() const { return !op_; }
  const Value& value() const { return value_; }
  const Operation& op() const { return *op_; }

 private:
  Value value_;
  std::shared_ptr<const Operation> op_;
};

// A multi-shot continuation; resuming never mutates it.
struct ContNode {
  virtual ~ContNode() = default;
  virtual Result resume(Runtime& rt, const Value& w) const = 0;
};

// A value-consuming function that lift extends to results.
struct Frame {
  virtual ~Frame() = default;
  virtual Result apply(Runtime& rt, const Value& v) const = 0;
};
using FramePtr = std::shared_ptr<const Frame>;

struct FnFrame : Frame {
  explicit FnFrame(std::function<Result(Runtime&, const Value&)> f) : fn(std::move(f)) {}
  Result apply(Runtime& rt, const Value& v) const override { return fn(rt, v); }
  std::function<Result(Runtime&, const Value&)> fn;
};

struct IdentityCont : ContNode {
  Result resume(Runtime&, const Value& w) const override { return Result(w); }
};

// w ↦ lift(f)(inner w)
struct BindCont : ContNode {
  BindCont(Cont i, FramePtr f) : inner(std::move(i)), frame(std::move(f)) {}
  Result resume(Runtime& rt, const Value& w) const override;
  Cont inner;
  FramePtr frame;
};

// w ↦ apply_handler(h, inner w)
struct HandleCont : ContNode {
  HandleCont(Cont i, HandlerPtr h) : inner(std::move(i)), handler(std::move(h)) {}
  Result resume(Runtime& rt, const Value& w) const override;
  Cont inner;
  HandlerPtr handler;
};

Cont identity_cont();

}  // namespace eff::runtime
