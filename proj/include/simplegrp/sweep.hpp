#pragma once

// Deterministic work-sharing for pair sweeps.
//
// Work is cut into numbered blocks.  Workers pull block indices from an
// atomic cursor and write results only into slots owned by their block, so
// the aggregate output is a pure function of the block bodies and never of
// scheduling or worker count.  Worker-local state (labeler caches and the
// like) lives in a context object constructed once per worker.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace simplegrp {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// make_ctx() -> Ctx; body(Ctx&, std::uint64_t block_index).
template <typename MakeCtx, typename Body>
void run_blocks(std::uint64_t block_count, int workers, MakeCtx&& make_ctx,
                Body&& body) {
  workers = resolve_workers(workers);
  if (block_count == 0) return;
  if (static_cast<std::uint64_t>(workers) > block_count)
    workers = static_cast<int>(block_count);

  if (workers <= 1) {
    auto ctx = make_ctx();
    for (std::uint64_t b = 0; b < block_count; ++b) body(ctx, b);
    return;
  }

  std::atomic<std::uint64_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        auto ctx = make_ctx();
        for (;;) {
          const std::uint64_t b = cursor.fetch_add(1, std::memory_order_relaxed);
          if (b >= block_count) break;
          body(ctx, b);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace simplegrp
