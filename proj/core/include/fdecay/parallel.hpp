#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fdecay {

// Fixed-size chunks handed to a small pool of threads. The chunk layout
// depends only on (n, chunk), never on the worker count, so per-chunk
// results reduced in chunk order are bit-identical for any pool size.
class Executor {
 public:
  explicit Executor(int workers = 1);
  int workers() const { return workers_; }

  using ChunkFn = std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>;
  void for_chunks(std::size_t n, std::size_t chunk, const ChunkFn& fn) const;

  static std::size_t chunk_count(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

 private:
  int workers_;
};

int hardware_workers();

// Pairwise reduction in index order.
template <class T, class Op>
T tree_reduce(std::vector<T> v, Op op, T zero) {
  if (v.empty()) return zero;
  while (v.size() > 1) {
    std::size_t h = (v.size() + 1) / 2;
    for (std::size_t i = 0; i + h < v.size(); ++i) v[i] = op(v[i], v[i + h]);
    v.resize(h);
  }
  return v[0];
}

double pairwise_sum(std::span<const double> v);

}  // namespace fdecay
