#pragma once

// Coroutine plumbing that lets a local solver be written as straight-line
// code while the caller decides when (and whether) each evaluation happens.
//
//   SolverTask run(...) {
//     double fx = co_await Evaluate{x};
//     ...
//     co_return Termination::kConvergedXtol;
//   }

#include <coroutine>
#include <exception>
#include <span>
#include <utility>
#include <vector>

namespace qaoams {

enum class Termination {
  kConvergedFtol,
  kConvergedXtol,
  kBudgetExhausted,
};

class SolverTask {
 public:
  struct promise_type {
    std::vector<double> request;
    double reply = 0.0;
    Termination result = Termination::kBudgetExhausted;
    std::exception_ptr error;

    SolverTask get_return_object() {
      return SolverTask(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_value(Termination t) { result = t; }
    void unhandled_exception() { error = std::current_exception(); }
  };

  SolverTask() = default;
  SolverTask(SolverTask&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  SolverTask& operator=(SolverTask&& other) noexcept {
    if (this != &other) {
      reset();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  SolverTask(const SolverTask&) = delete;
  SolverTask& operator=(const SolverTask&) = delete;
  ~SolverTask() { reset(); }

  // Runs the body up to its first evaluation request.
  void start() { resume(); }

  bool done() const { return !handle_ || handle_.done(); }
  const std::vector<double>& request() const { return handle_.promise().request; }
  Termination result() const { return handle_.promise().result; }

  // Answers the pending request and runs to the next one (or completion).
  void reply(double value) {
    handle_.promise().reply = value;
    resume();
  }

 private:
  explicit SolverTask(std::coroutine_handle<promise_type> h) : handle_(h) {}

  void resume() {
    handle_.resume();
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
  }
  void reset() {
    if (handle_) handle_.destroy();
    handle_ = {};
  }

  std::coroutine_handle<promise_type> handle_;
};

// co_await Evaluate{x} suspends the solver until the driver replies with f(x).
// Keep the awaiter trivially destructible and pass a named point: GCC 11
// mishandles non-trivial temporaries inside co_await expressions.
struct Evaluate {
  std::span<const double> point;
  SolverTask::promise_type* promise = nullptr;

  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<SolverTask::promise_type> h) {
    promise = &h.promise();
    promise->request.assign(point.begin(), point.end());
  }
  double await_resume() const noexcept { return promise->reply; }
};

}  // namespace qaoams
