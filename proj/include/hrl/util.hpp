#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hrl {

// Error taxonomy shared by all modules. Everything is a runtime_error so
// callers that don't care about the kind can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : Error {
  using Error::Error;
};
struct RegionError : Error {
  using Error::Error;
};
struct SingularityError : Error {
  using Error::Error;
};
struct ParityError : DomainError {
  using DomainError::DomainError;
};
// Carries the last two estimates of a quadrature that ran out of budget.
struct ConvergenceError : Error {
  double last{}, previous{};
  ConvergenceError(const std::string& msg, double last_, double prev_)
      : Error(msg), last(last_), previous(prev_) {}
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-item generator: results do not depend on thread scheduling.
inline std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t item) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(item)));
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Worker count: HRL_THREADS wins, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("HRL_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1u;
}

// Static-chunk-free parallel loop over [0, n); items claimed atomically so
// uneven work still balances. Falls back to the calling thread for 1 worker.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, n)) - 1;
  pool.reserve(spawn);
  for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace hrl
