#pragma once

// Shared aliases, error types and small utilities used across the library.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cellulo {

// Coefficient integers (Kazhdan-Lusztig coefficients are unbounded).
using Int = boost::multiprecision::cpp_int;

// Weight coordinates. Only small denominators occur (half-sums of roots),
// but numerators scale with the truncation radius and with powers of ell.
using Rat = boost::rational<long long>;

class datum_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation needs basis elements beyond the truncated
// table it was given.
class insufficient_radius : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline long long floordiv(long long a, long long b) {
    // b > 0; rounds toward -infinity.
    long long q = a / b;
    if ((a % b) != 0 && a < 0) --q;
    return q;
}

inline long long rat_to_int(const Rat& r) {
    if (r.denominator() != 1)
        throw std::invalid_argument("expected an integral value, got " +
                                    std::to_string(r.numerator()) + "/" +
                                    std::to_string(r.denominator()));
    return r.numerator();
}

inline unsigned max_threads() {
    if (const char* s = std::getenv("CELLULO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for all i in [0, n). fn must only touch per-index state;
// results are deterministic because the index space is fixed up front.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned nthreads = max_threads();
    if (nthreads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (nthreads > n) nthreads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace cellulo
