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

#ifndef ALGMAT_PARSER_HPP
#define ALGMAT_PARSER_HPP

#include <cctype>
#include <string>

#include "ratfun.hpp"

namespace algmat {

// Expression grammar (documented in the README):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | base ('^' NAT)*
//   base    := NAT | IDENT | '(' expr ')'
//
// Identifiers are ring variables or the extension-field generator. '*' is
// required (no implicit multiplication). '/' builds rational functions;
// parse_polynomial rejects a nonconstant denominator.
template <class K>
class ExprParser {
  public:
    ExprParser(std::string text, RingPtr<K> ring) : s_(std::move(text)), ring_(std::move(ring)) {}

    RatFun<K> parse_rational() {
        pos_ = 0;
        RatFun<K> r = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw parse_error(context("unexpected trailing input"));
        return r;
    }

    Poly<K> parse_polynomial() {
        RatFun<K> r = parse_rational();
        if (!r.is_polynomial())
            throw parse_error("expression is not a polynomial (nonconstant denominator)");
        return r.as_polynomial();
    }

  private:
    RatFun<K> expr() {
        RatFun<K> acc = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = acc + term();
            } else if (peek() == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RatFun<K> term() {
        RatFun<K> acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (peek() == '/') {
                ++pos_;
                acc = acc / factor();
            } else {
                return acc;
            }
        }
    }

    RatFun<K> factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        RatFun<K> b = base();
        for (;;) {
            skip_ws();
            if (peek() != '^') return b;
            ++pos_;
            skip_ws();
            unsigned long e = natural();
            if (e > 60000) throw parse_error("exponent too large");
            b = RatFun<K>(b.num.pow(static_cast<unsigned>(e)),
                          b.den.pow(static_cast<unsigned>(e)));
        }
    }

    RatFun<K> base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFun<K> r = expr();
            skip_ws();
            if (peek() != ')') throw parse_error(context("expected ')'"));
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek())))
                digits += s_[pos_++];
            auto v = ring_->field.parse(digits);
            if (!v) throw parse_error(context("literal '" + digits + "' not in field"));
            return RatFun<K>(Poly<K>::constant(ring_, *v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                name += s_[pos_++];
            int idx = ring_->var_index(name);
            if (idx >= 0) return RatFun<K>(Poly<K>::variable(ring_, idx));
            if (auto g = generator_element(name))
                return RatFun<K>(Poly<K>::constant(ring_, *g));
            throw parse_error(context("unknown variable '" + name + "'"));
        }
        throw parse_error(context("unexpected character"));
    }

    std::optional<typename K::Elt> generator_element(const std::string& name) const {
        if constexpr (std::is_same_v<K, ExtField>) {
            if (name == ring_->field.generator_name())
                return ring_->field.generator();
        }
        (void)name;
        return std::nullopt;
    }

    unsigned long natural() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error(context("expected a natural number"));
        unsigned long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
            if (v > 1000000) throw parse_error("number too large");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    std::string context(const std::string& msg) const {
        return msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"";
    }

    std::string s_;
    RingPtr<K> ring_;
    size_t pos_ = 0;
};

template <class K>
Poly<K> parse_polynomial(const std::string& text, const RingPtr<K>& ring) {
    return ExprParser<K>(text, ring).parse_polynomial();
}

template <class K>
RatFun<K> parse_rational(const std::string& text, const RingPtr<K>& ring) {
    return ExprParser<K>(text, ring).parse_rational();
}

}  // namespace algmat

#endif  // ALGMAT_PARSER_HPP
