//---------------------------------*-C++-*-----------------------------------//
// Copyright tentspace contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tent/Parallel.hh
//! \brief Deterministic fork-join loop
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace tent
{
//---------------------------------------------------------------------------//
//! Worker count from TENT_THREADS (default 1)
inline unsigned int thread_count()
{
    char const* env = std::getenv("TENT_THREADS");
    if (!env || !*env)
        return 1;
    try
    {
        int n = std::stoi(env);
        return n > 0 ? static_cast<unsigned int>(n) : 1u;
    }
    catch (std::exception const&)
    {
        return 1;
    }
}

//---------------------------------------------------------------------------//
/*!
 * Run body(i) for i in [0, n) on contiguous blocks.
 *
 * Each index must write only its own output slot, so results never depend on
 * the number of workers. The first exception thrown by any worker is
 * rethrown on the calling thread.
 */
template<class F>
void parallel_for(std::size_t n, F&& body)
{
    unsigned int workers = thread_count();
    if (workers <= 1 || n < 2 * workers)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t const chunk = (n + workers - 1) / workers;
    for (unsigned int w = 0; w < workers; ++w)
    {
        pool.emplace_back([&, w] {
            try
            {
                std::size_t end = std::min(n, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i)
                    body(i);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
}

//---------------------------------------------------------------------------//
}  // namespace tent
