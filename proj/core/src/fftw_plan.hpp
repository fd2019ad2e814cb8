#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>

namespace latchaos::detail {

/// FFTW's planner is not reentrant; every plan create/destroy takes this lock.
std::mutex& fftw_planner_mutex();

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

/// Aligned complex buffer owned by FFTW's allocator.
class FftwBuffer {
public:
    explicit FftwBuffer(std::size_t count);

    std::complex<double>* data() noexcept { return reinterpret_cast<std::complex<double>*>(ptr_.get()); }
    const std::complex<double>* data() const noexcept { return reinterpret_cast<const std::complex<double>*>(ptr_.get()); }
    fftw_complex* raw() noexcept { return ptr_.get(); }
    std::size_t size() const noexcept { return size_; }

private:
    std::unique_ptr<fftw_complex[], FftwFree> ptr_;
    std::size_t size_;
};

/// In-place batched complex transform over `howmany` contiguous arrays of
/// length n, bound to one buffer.
class BatchPlan {
public:
    BatchPlan(std::size_t n, int howmany, int sign, FftwBuffer& buffer, unsigned flags);
    ~BatchPlan();
    BatchPlan(const BatchPlan&) = delete;
    BatchPlan& operator=(const BatchPlan&) = delete;

    void execute() const noexcept { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

} // namespace latchaos::detail
