/*
   Copyright 2026 The algmat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ALGMAT_LINALG_HPP
#define ALGMAT_LINALG_HPP

#include <vector>

#include <gmpxx.h>

#include "fields.hpp"

namespace algmat {

// Exact rank by Gaussian elimination over a field. M is row-major and is
// consumed. Pivots are chosen as the first nonzero entry in the column.
template <class K>
int rank_gauss(const K& F, std::vector<typename K::Elt> M, int rows, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (!F.is_zero(M[r * cols + c])) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = c; j < cols; ++j)
                std::swap(M[piv * cols + j], M[rank * cols + j]);
        }
        auto pinv = F.inv(M[rank * cols + c]);
        for (int r = rank + 1; r < rows; ++r) {
            auto& a = M[r * cols + c];
            if (F.is_zero(a)) continue;
            auto factor = F.mul(a, pinv);
            for (int j = c; j < cols; ++j) {
                M[r * cols + j] = F.sub(M[r * cols + j],
                                        F.mul(factor, M[rank * cols + j]));
            }
        }
        ++rank;
    }
    return rank;
}

// Fraction-free (Bareiss) rank over the integers. Intermediate entries are
// minors of the input, so everything stays integral and exact.
inline int rank_bareiss(std::vector<mpz_class> M, int rows, int cols) {
    int rank = 0;
    mpz_class prev(1);
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r) {
            if (M[r * cols + c] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = 0; j < cols; ++j)
                std::swap(M[piv * cols + j], M[rank * cols + j]);
        }
        const int pr = rank;
        for (int r = rank + 1; r < rows; ++r) {
            for (int j = c + 1; j < cols; ++j) {
                mpz_class t = M[r * cols + j] * M[pr * cols + c] -
                              M[r * cols + c] * M[pr * cols + j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M[r * cols + j] = std::move(t);
            }
            M[r * cols + c] = 0;
        }
        prev = M[pr * cols + c];
        ++rank;
    }
    return rank;
}

// Clears denominators row by row (row scaling preserves every column-subset
// rank) and hands the integer matrix to Bareiss.
inline int rank_rational(const std::vector<mpq_class>& M, int rows, int cols) {
    std::vector<mpz_class> Z(static_cast<size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        mpz_class l(1);
        for (int j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                    M[r * cols + j].get_den().get_mpz_t());
        for (int j = 0; j < cols; ++j) {
            mpq_class v = M[r * cols + j] * l;
            Z[r * cols + j] = v.get_num();
        }
    }
    return rank_bareiss(std::move(Z), rows, cols);
}

}  // namespace algmat

#endif  // ALGMAT_LINALG_HPP
