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

#ifndef ALGMAT_RATFUN_HPP
#define ALGMAT_RATFUN_HPP

#include "polynomial.hpp"

namespace algmat {

// Rational function num/den. Representations are not reduced; equality is
// tested by cross-multiplication.
template <class K>
struct RatFun {
    Poly<K> num;
    Poly<K> den;

    RatFun() = default;
    explicit RatFun(Poly<K> n)
        : num(std::move(n)),
          den(Poly<K>::constant(num.ring(), num.ring()->field.one())) {}
    RatFun(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw input_error("rational function with zero denominator");
    }

    const RingPtr<K>& ring() const { return num.ring(); }
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.is_constant(); }

    // the polynomial num/c when den is the constant c
    Poly<K> as_polynomial() const {
        if (!is_polynomial())
            throw structure_error("rational function has a nonconstant denominator");
        if (num.is_zero()) return num;
        return num.scaled(ring()->field.inv(den.lead_coeff()));
    }

    RatFun operator+(const RatFun& o) const {
        return RatFun(num * o.den + o.num * den, den * o.den);
    }
    RatFun operator-(const RatFun& o) const {
        return RatFun(num * o.den - o.num * den, den * o.den);
    }
    RatFun operator*(const RatFun& o) const {
        return RatFun(num * o.num, den * o.den);
    }
    RatFun operator/(const RatFun& o) const {
        if (o.num.is_zero()) throw input_error("division by zero rational function");
        return RatFun(num * o.den, den * o.num);
    }
    RatFun operator-() const { return RatFun(-num, den); }

    bool equals(const RatFun& o) const { return num * o.den == o.num * den; }

    // d/dv via the quotient rule; denominator becomes den^2
    RatFun derivative(int v) const {
        return RatFun(num.derivative(v) * den - num * den.derivative(v), den * den);
    }

    // evaluation; throws if the denominator vanishes at the point
    typename K::Elt evaluate(const std::vector<typename K::Elt>& pt) const {
        auto dv = den.evaluate(pt);
        if (ring()->field.is_zero(dv))
            throw structure_error("denominator vanishes at sample point");
        return ring()->field.div(num.evaluate(pt), dv);
    }

    std::string to_string() const {
        if (is_polynomial()) return as_polynomial().to_string();
        return "(" + num.to_string() + ")/(" + den.to_string() + ")";
    }
};

}  // namespace algmat

#endif  // ALGMAT_RATFUN_HPP
