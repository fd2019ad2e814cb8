#include "fftw_plan.hpp"

#include <new>
#include <stdexcept>

namespace latchaos::detail {

std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

FftwBuffer::FftwBuffer(std::size_t count)
    : ptr_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count))), size_(count)
{
    if (!ptr_)
        throw std::bad_alloc();
    for (std::size_t i = 0; i < count; ++i) {
        ptr_[i][0] = 0.0;
        ptr_[i][1] = 0.0;
    }
}

BatchPlan::BatchPlan(std::size_t n, int howmany, int sign, FftwBuffer& buffer, unsigned flags)
{
    const int len = static_cast<int>(n);
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_many_dft(1, &len, howmany, buffer.raw(), nullptr, 1, len,
                               buffer.raw(), nullptr, 1, len, sign, flags);
    if (!plan_)
        throw std::runtime_error("FFTW planning failed");
}

BatchPlan::~BatchPlan()
{
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
}

} // namespace latchaos::detail
