#pragma once

#include <initializer_list>
#include <vector>

#include "braidhom/chain.hpp"
#include "braidhom/graded.hpp"
#include "braidhom/smith.hpp"

namespace braidhom::testing {

inline SparseIntMatrix dense(std::initializer_list<std::initializer_list<long long>> rows) {
    SparseIntMatrix m;
    m.rows = static_cast<int>(rows.size());
    m.cols = rows.size() == 0 ? 0 : static_cast<int>(rows.begin()->size());
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (long long v : row) {
            if (v != 0) m.add(r, c, v);
            ++c;
        }
        ++r;
    }
    return m;
}

/* Free ranks by degree starting at `from`; convenient for field dimensions too. */
inline GradedAbelianGroup ranks(int from, std::initializer_list<long long> dims) {
    GradedAbelianGroup g;
    int q = from;
    for (long long d : dims) g.set(q++, d);
    return g;
}

/* Field dimension of H_q given an integral table: rank + p-torsion in degrees q and q-1. */
inline long long field_dim(const GradedAbelianGroup& integral, int q, unsigned p) {
    auto count_p = [&](int deg) {
        long long n = 0;
        for (const Integer& t : integral.torsion(deg))
            if (t % p == 0) ++n;
        return n;
    };
    return integral.free_rank(q) + count_p(q) + count_p(q - 1);
}

}  // namespace braidhom::testing
