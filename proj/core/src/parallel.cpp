#include "fdecay/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace fdecay {

Executor::Executor(int workers) : workers_(std::max(1, workers)) {}

int hardware_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void Executor::for_chunks(std::size_t n, std::size_t chunk, const ChunkFn& fn) const {
  if (n == 0) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t nchunks = chunk_count(n, chunk);
  const int nthreads = static_cast<int>(std::min<std::size_t>(workers_, nchunks));
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::size_t err_chunk = nchunks;
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      try {
        fn(c, c * chunk, std::min(n, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        // report the lowest failing chunk so errors are reproducible too
        if (c < err_chunk) err_chunk = c, err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

}  // namespace fdecay
