#include "doctest.h"

#include "latchaos/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

TEST_CASE("parallel_for visits every index once")
{
    std::vector<std::atomic<int>> hits(1000);
    latchaos::parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits)
        CHECK(h.load() == 1);
}

TEST_CASE("parallel_for rethrows")
{
    CHECK_THROWS_AS(latchaos::parallel_for(50, [](std::size_t i) {
                        if (i == 17)
                            throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("worker count honours the environment")
{
    ::setenv("LATCHAOS_THREADS", "1", 1);
    CHECK(latchaos::worker_count() == 1);
    ::setenv("LATCHAOS_THREADS", "junk", 1);
    CHECK(latchaos::worker_count() >= 1);
    ::unsetenv("LATCHAOS_THREADS");
    CHECK(latchaos::worker_count() >= 1);
}
