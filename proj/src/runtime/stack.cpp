#include "runtime/stack.hpp"

#include <pthread.h>

#include <cstddef>
#include <cstdint>
#include <exception>

#include "runtime/value.hpp"

namespace eff::runtime {
namespace {

constexpr std::size_t kMargin = 256 * 1024;
thread_local std::uintptr_t stack_low = 0;

std::uintptr_t current_stack_low() {
  pthread_attr_t attr;
  if (pthread_getattr_np(pthread_self(), &attr) != 0) return 1;
  void* addr = nullptr;
  std::size_t size = 0;
  pthread_attr_getstack(&attr, &addr, &size);
  pthread_attr_destroy(&attr);
  return reinterpret_cast<std::uintptr_t>(addr) + kMargin;
}

struct Job {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* trampoline(void* p) {
  auto* job = static_cast<Job*>(p);
  try {
    (*job->fn)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void stack_check() {
  if (stack_low == 0) stack_low = current_stack_low();
  char probe;
  if (reinterpret_cast<std::uintptr_t>(&probe) < stack_low) {
    throw RuntimeError("stack exhausted", "recursion too deep");
  }
}

void run_with_large_stack(const std::function<void()>& f) {
  Job job{&f, nullptr};
  for (std::size_t size : {std::size_t{256} << 20, std::size_t{64} << 20}) {
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, size);
    pthread_t thread;
    const int rc = pthread_create(&thread, &attr, trampoline, &job);
    pthread_attr_destroy(&attr);
    if (rc == 0) {
      pthread_join(thread, nullptr);
      if (job.error) std::rethrow_exception(job.error);
      return;
    }
  }
  f();  // could not get a bigger stack; run here
}

}  // namespace eff::runtime
