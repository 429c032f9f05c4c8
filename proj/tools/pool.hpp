#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace rsc::cli {

// out[i] = f(i), computed by up to `jobs` workers (0: hardware concurrency). f must not throw.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, int jobs, F f) {
  std::vector<T> out(n);
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
  };
  std::vector<std::future<void>> running;
  for (std::size_t w = 1; w < workers; ++w) running.push_back(std::async(std::launch::async, work));
  work();
  for (auto& r : running) r.get();
  return out;
}

}  // namespace rsc::cli
