#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>
#include <ostream>
#include <string>
#include <vector>

#include "hkcce/config.hpp"

namespace hkcce {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOutcome {
  int exit_code = kExitOk;
  std::filesystem::path out_dir;
  std::vector<std::filesystem::path> written;  // relative to out_dir
  std::vector<std::string> failing;            // "case -> report path"
  int cases = 0;
};

/// Executes one command, writes manifest.json, reports/*.json and
/// tables/*.csv under cfg.out_dir, and prints a short summary to `log`.
/// Exit code 0 iff every case passes, 1 on a failing case, 2 on I/O failure.
RunOutcome run_command(const RunConfig& cfg, std::ostream& log);

/// Runs fn(i) for i in [0, count) on `jobs` threads; results keep index
/// order. The first exception thrown by fn is rethrown after all workers stop.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, int jobs, Fn fn) {
  std::vector<R> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace hkcce
