#include "rawmamba/parallel.hpp"

#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace rawmamba {

int thread_count() {
    static int n = [] {
        if (const char* env = std::getenv("RAWMAMBA_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }();
    return n;
}

namespace {

// Lazy shared pool. Workers pick a fixed contiguous chunk by worker index;
// every element is computed by exactly one worker with the same inner loop
// order, so outputs are bit-identical for any worker count.
class Pool {
  public:
    explicit Pool(int workers) : workers_(workers) {
        for (int i = 1; i < workers_; ++i)
            threads_.emplace_back([this, i] { worker_loop(i); });
    }

    ~Pool() {
        {
            std::unique_lock<std::mutex> lk(mu_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
        std::unique_lock<std::mutex> lk(mu_);
        n_ = n;
        fn_ = &fn;
        pending_ = workers_ - 1;
        ++generation_;
        lk.unlock();
        cv_.notify_all();

        run_chunk(0);

        lk.lock();
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        fn_ = nullptr;
    }

  private:
    void run_chunk(int worker) {
        int64_t chunk = (n_ + workers_ - 1) / workers_;
        int64_t begin = worker * chunk;
        int64_t end = std::min<int64_t>(n_, begin + chunk);
        if (begin < end) (*fn_)(begin, end);
    }

    void worker_loop(int worker) {
        uint64_t seen = 0;
        for (;;) {
            std::unique_lock<std::mutex> lk(mu_);
            cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            lk.unlock();

            run_chunk(worker);

            lk.lock();
            if (--pending_ == 0) done_cv_.notify_all();
        }
    }

    int workers_;
    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_, done_cv_;
    const std::function<void(int64_t, int64_t)>* fn_ = nullptr;
    int64_t n_ = 0;
    int pending_ = 0;
    uint64_t generation_ = 0;
    bool stop_ = false;
};

}  // namespace

void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
    if (n <= 0) return;
    int workers = thread_count();
    if (workers == 1 || n < 256) {
        fn(0, n);
        return;
    }
    static Pool pool(thread_count());
    pool.run(n, fn);
}

}  // namespace rawmamba
