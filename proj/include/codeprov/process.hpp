#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace codeprov {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs argv[0] (PATH lookup) without a shell. `stdin_data`, when given, is
/// fed to the child's standard input. Throws std::system_error if the
/// process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::optional<std::string>& stdin_data = std::nullopt,
                          const std::optional<std::filesystem::path>& cwd = std::nullopt);

/// Applies `fn` to every index in [0, n) on up to `workers` threads and
/// returns results in index order. The first exception thrown by any worker
/// is rethrown after all workers finish.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t n, unsigned workers, Fn&& fn) {
  std::vector<Result> results(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) results[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace codeprov
