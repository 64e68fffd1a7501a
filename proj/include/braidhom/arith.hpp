#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidhom {

/* All integer linear algebra runs over exact unbounded integers. */
using Integer = boost::multiprecision::cpp_int;

/** Raised when an operation is asked for inputs outside a theorem's hypotheses. */
struct hypothesis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/** Raised when a coefficient system is not admissible for the requested computation. */
struct coefficient_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/** Raised when a construction would exceed the configured simplex budget. */
struct budget_error : std::runtime_error {
    std::size_t reached;
    std::size_t limit;
    budget_error(std::size_t reached_, std::size_t limit_)
        : std::runtime_error("simplex budget exhausted: reached " + std::to_string(reached_) +
                             " with limit " + std::to_string(limit_)),
          reached(reached_),
          limit(limit_) {}
};

/** Exact binomial coefficient C(n, k); zero outside the triangle. */
inline Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Integer r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

/** Binomial coefficient as uint64, with an explicit overflow check. */
inline std::uint64_t binomial_u64(long long n, long long k) {
    Integer b = binomial(n, k);
    if (b > Integer(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error("binomial coefficient does not fit in 64 bits");
    return static_cast<std::uint64_t>(b);
}

inline int popcount_u64(std::uint64_t x) { return std::popcount(x); }

/* Parity of the permutation sorting v ascending (v has distinct entries); true = odd. */
template <typename T>
inline bool sort_parity_is_odd(const std::vector<T>& v) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j] < v[i]) ++inversions;
    return inversions % 2 == 1;
}

}  // namespace braidhom
