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

#ifndef ALGMAT_MONOMIAL_HPP
#define ALGMAT_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "common.hpp"

namespace algmat {

using Exp = std::uint16_t;
using ExpSpan = std::span<const Exp>;

inline long total_degree(ExpSpan e) {
    long d = 0;
    for (Exp x : e) d += x;
    return d;
}

inline bool divides(ExpSpan a, ExpSpan b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline void exp_mul(ExpSpan a, ExpSpan b, Exp* out) {
    for (size_t i = 0; i < a.size(); ++i) {
        std::uint32_t s = std::uint32_t(a[i]) + b[i];
        if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
        out[i] = static_cast<Exp>(s);
    }
}

inline void exp_div(ExpSpan a, ExpSpan b, Exp* out) {  // a / b, requires b | a
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Exp>(a[i] - b[i]);
}

inline void exp_lcm(ExpSpan a, ExpSpan b, Exp* out) {
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

inline bool exp_coprime(ExpSpan a, ExpSpan b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

// Monomial orders: lex, grevlex, and elimination block orders (front block
// compared first under grevlex, then the remaining variables under the back
// order). Block orders are what make elimination ideals drop out of a
// Groebner basis.
struct MonomialOrder {
    enum class Kind : std::uint8_t { lex, grevlex, block };

    Kind kind = Kind::grevlex;
    Kind back = Kind::grevlex;        // block only
    std::vector<std::uint8_t> front;  // block only: per-variable flag

    static MonomialOrder Lex() { return {Kind::lex, Kind::grevlex, {}}; }
    static MonomialOrder Grevlex() { return {Kind::grevlex, Kind::grevlex, {}}; }
    static MonomialOrder Block(std::vector<std::uint8_t> front_flags,
                               Kind back_order = Kind::grevlex) {
        return {Kind::block, back_order, std::move(front_flags)};
    }

    // three-way compare: >0 means a > b
    int cmp(ExpSpan a, ExpSpan b) const {
        switch (kind) {
            case Kind::lex:
                return cmp_lex(a, b);
            case Kind::grevlex:
                return cmp_grevlex(a, b);
            case Kind::block: {
                int c = cmp_masked(a, b, true, Kind::grevlex);
                if (c) return c;
                return cmp_masked(a, b, false, back);
            }
        }
        return 0;
    }
    bool less(ExpSpan a, ExpSpan b) const { return cmp(a, b) < 0; }

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && back == o.back && front == o.front;
    }

  private:
    static int cmp_lex(ExpSpan a, ExpSpan b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    }
    static int cmp_grevlex(ExpSpan a, ExpSpan b) {
        long da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db ? 1 : -1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }
    int cmp_masked(ExpSpan a, ExpSpan b, bool in_front, Kind k) const {
        long da = 0, db = 0;
        if (k == Kind::grevlex) {
            for (size_t i = 0; i < a.size(); ++i) {
                if (static_cast<bool>(front[i]) == in_front) da += a[i], db += b[i];
            }
            if (da != db) return da > db ? 1 : -1;
            for (size_t i = a.size(); i-- > 0;) {
                if (static_cast<bool>(front[i]) != in_front) continue;
                if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
            }
            return 0;
        }
        for (size_t i = 0; i < a.size(); ++i) {
            if (static_cast<bool>(front[i]) != in_front) continue;
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }
};

}  // namespace algmat

#endif  // ALGMAT_MONOMIAL_HPP
