#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace laprox {

// Samples per reduction block. The block structure depends only on the
// sample count, never on the thread count.
inline constexpr std::uint64_t kSampleBlock = 1024;

// Runs `work(sample_id, acc, ws)` for ids [0, samples) in fixed-size blocks
// and hands each finished block accumulator to `commit` in ascending block
// order. Within a block samples run sequentially in ascending order, so the
// full floating-point reduction order is a function of the sample count
// alone and results are bit-identical for any number of worker threads.
template <typename MakeAcc, typename MakeWs, typename Work, typename Commit>
void run_sample_blocks(std::uint64_t samples, unsigned threads, MakeAcc&& make_acc,
                       MakeWs&& make_ws, Work&& work, Commit&& commit) {
    const std::uint64_t nblocks = (samples + kSampleBlock - 1) / kSampleBlock;

    if (threads <= 1 || nblocks <= 1) {
        auto ws = make_ws();
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            auto acc = make_acc();
            const std::uint64_t end = std::min(samples, (b + 1) * kSampleBlock);
            for (std::uint64_t i = b * kSampleBlock; i < end; ++i) work(i, acc, ws);
            commit(acc);
        }
        return;
    }

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<bool> cancelled{false};
    std::uint64_t merge_turn = 0;
    std::mutex merge_mutex;
    std::condition_variable merge_cv;
    std::exception_ptr first_error;

    auto worker = [&] {
        auto ws = make_ws();
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            auto acc = make_acc();
            std::exception_ptr block_error;
            if (!cancelled.load(std::memory_order_relaxed)) {
                try {
                    const std::uint64_t end = std::min(samples, (b + 1) * kSampleBlock);
                    for (std::uint64_t i = b * kSampleBlock; i < end; ++i) work(i, acc, ws);
                } catch (...) {
                    block_error = std::current_exception();
                    cancelled.store(true, std::memory_order_relaxed);
                }
            }
            // blocks must pass through the merge gate in order even when
            // skipped, otherwise later blocks would wait forever
            std::unique_lock<std::mutex> lock(merge_mutex);
            merge_cv.wait(lock, [&] { return merge_turn == b; });
            if (block_error && !first_error) first_error = block_error;
            if (!first_error) {
                try {
                    commit(acc);
                } catch (...) {
                    first_error = std::current_exception();
                    cancelled.store(true, std::memory_order_relaxed);
                }
            }
            ++merge_turn;
            lock.unlock();
            merge_cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace laprox
