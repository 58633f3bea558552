#pragma once

#include <functional>

namespace eff::runtime {

// Raises a "stack exhausted" runtime error when the current thread is close
// to the end of its stack.
void stack_check();

// Runs f to completion on a thread with a very large stack, rethrowing
// whatever it throws.
void run_with_large_stack(const std::function<void()>& f);

}  // namespace eff::runtime
