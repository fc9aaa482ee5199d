#include "psdec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psdec {

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("PSDEC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(cap, hw);
    }
    return hw;
}

namespace {

thread_local bool tl_inside_pool = false;

// Persistent worker pool; indices are claimed atomically, each fn(k) runs on
// exactly one thread, so results do not depend on the thread count.
class Pool {
public:
    static Pool& instance() {
        static Pool pool;
        return pool;
    }

    void run(int count, const std::function<void(int)>& fn) {
        std::unique_lock lock(job_mutex_);
        fn_ = &fn;
        count_ = count;
        next_.store(0, std::memory_order_relaxed);
        remaining_.store(count, std::memory_order_relaxed);
        error_ = nullptr;
        {
            std::lock_guard wake(wake_mutex_);
            ++generation_;
        }
        wake_cv_.notify_all();
        work();  // main thread participates
        std::unique_lock done(wake_mutex_);
        done_cv_.wait(done, [this] { return remaining_.load() == 0; });
        fn_ = nullptr;
        if (error_) std::rethrow_exception(error_);
    }

private:
    Pool() {
        const int workers = max_threads() - 1;
        for (int w = 0; w < workers; ++w)
            threads_.emplace_back([this] { worker_loop(); });
    }

    ~Pool() {
        {
            std::lock_guard lock(wake_mutex_);
            stop_ = true;
            ++generation_;
        }
        wake_cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void worker_loop() {
        tl_inside_pool = true;
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock lock(wake_mutex_);
                wake_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
                seen = generation_;
                if (stop_) return;
            }
            work();
        }
    }

    void work() {
        const std::function<void(int)>* fn = fn_;
        if (!fn) return;
        for (;;) {
            const int k = next_.fetch_add(1, std::memory_order_relaxed);
            if (k >= count_) break;
            try {
                (*fn)(k);
            } catch (...) {
                std::lock_guard lock(wake_mutex_);
                if (!error_) error_ = std::current_exception();
            }
            if (remaining_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::lock_guard lock(wake_mutex_);
                done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex job_mutex_;  // serializes run() callers
    std::mutex wake_mutex_;
    std::condition_variable wake_cv_, done_cv_;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
    const std::function<void(int)>* volatile fn_ = nullptr;
    int count_ = 0;
    std::atomic<int> next_{0};
    std::atomic<int> remaining_{0};
    std::exception_ptr error_;
};

}  // namespace

void parallel_for(int count, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (count == 1 || tl_inside_pool || max_threads() == 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    Pool::instance().run(count, fn);
}

}  // namespace psdec
