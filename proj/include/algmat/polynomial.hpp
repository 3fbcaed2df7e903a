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

#ifndef ALGMAT_POLYNOMIAL_HPP
#define ALGMAT_POLYNOMIAL_HPP

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fields.hpp"
#include "monomial.hpp"

namespace algmat {

template <class K>
struct PolyRing {
    K field;
    std::vector<std::string> vars;
    MonomialOrder order;

    PolyRing(K f, std::vector<std::string> v, MonomialOrder o = MonomialOrder::Grevlex())
        : field(std::move(f)), vars(std::move(v)), order(std::move(o)) {
        for (size_t i = 0; i < vars.size(); ++i)
            for (size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] == vars[j])
                    throw input_error("duplicate variable name: " + vars[i]);
    }

    size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool same_base(const PolyRing& o) const {  // ignores the monomial order
        return field == o.field && vars == o.vars;
    }
    bool operator==(const PolyRing& o) const {
        return same_base(o) && order == o.order;
    }
};

template <class K>
using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <class K>
RingPtr<K> make_ring(K f, std::vector<std::string> vars,
                     MonomialOrder o = MonomialOrder::Grevlex()) {
    return std::make_shared<const PolyRing<K>>(std::move(f), std::move(vars), std::move(o));
}

template <class K>
RingPtr<K> with_order(const RingPtr<K>& r, MonomialOrder o) {
    return make_ring<K>(r->field, r->vars, std::move(o));
}

// Sparse multivariate polynomial in canonical form: terms strictly descending
// in the ring's monomial order, no zero coefficients. Exponents for all terms
// are stored in one flat array (nterms * nvars).
template <class K>
class Poly {
  public:
    using Elt = typename K::Elt;

    Poly() = default;
    explicit Poly(RingPtr<K> ring) : ring_(std::move(ring)) {}

    static Poly constant(RingPtr<K> ring, Elt c) {
        Poly p(ring);
        if (!ring->field.is_zero(c)) {
            p.coeff_.push_back(std::move(c));
            p.exps_.assign(ring->nvars(), 0);
        }
        return p;
    }
    static Poly variable(RingPtr<K> ring, int idx) {
        if (idx < 0 || idx >= static_cast<int>(ring->nvars()))
            throw input_error("variable index out of range");
        Poly p(ring);
        p.coeff_.push_back(ring->field.one());
        p.exps_.assign(ring->nvars(), 0);
        p.exps_[idx] = 1;
        return p;
    }
    static Poly monomial(RingPtr<K> ring, Elt c, std::vector<Exp> e) {
        Poly p(ring);
        if (!ring->field.is_zero(c)) {
            p.coeff_.push_back(std::move(c));
            p.exps_ = std::move(e);
        }
        return p;
    }

    // canonicalizes an arbitrary term list (merges duplicates, drops zeros)
    static Poly from_terms(RingPtr<K> ring,
                           std::vector<std::pair<std::vector<Exp>, Elt>> terms) {
        const size_t n = ring->nvars();
        std::vector<size_t> idx(terms.size());
        std::iota(idx.begin(), idx.end(), 0);
        const MonomialOrder& ord = ring->order;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return ord.cmp(ExpSpan(terms[a].first), ExpSpan(terms[b].first)) > 0;
        });
        Poly p(ring);
        const K& F = ring->field;
        for (size_t t : idx) {
            if (terms[t].first.size() != n)
                throw input_error("exponent vector length mismatch");
            if (!p.coeff_.empty() &&
                std::equal(terms[t].first.begin(), terms[t].first.end(),
                           p.exps_.end() - n)) {
                Elt s = F.add(p.coeff_.back(), terms[t].second);
                if (F.is_zero(s)) {
                    p.coeff_.pop_back();
                    p.exps_.resize(p.exps_.size() - n);
                } else {
                    p.coeff_.back() = std::move(s);
                }
            } else if (!F.is_zero(terms[t].second)) {
                p.coeff_.push_back(terms[t].second);
                p.exps_.insert(p.exps_.end(), terms[t].first.begin(), terms[t].first.end());
            }
        }
        return p;
    }

    // trusted constructor: input must already be canonical for the ring order
    static Poly from_sorted(RingPtr<K> ring, std::vector<Elt> cs, std::vector<Exp> es) {
        Poly p(ring);
        p.coeff_ = std::move(cs);
        p.exps_ = std::move(es);
        return p;
    }

    const RingPtr<K>& ring() const { return ring_; }
    const K& field() const { return ring_->field; }
    size_t nvars() const { return ring_->nvars(); }
    size_t nterms() const { return coeff_.size(); }
    bool is_zero() const { return coeff_.empty(); }
    bool is_constant() const {
        return coeff_.empty() || (coeff_.size() == 1 && total_degree(exp(0)) == 0);
    }

    ExpSpan exp(size_t i) const { return ExpSpan(exps_.data() + i * nvars(), nvars()); }
    const Elt& coeff(size_t i) const { return coeff_[i]; }
    ExpSpan lead_exp() const { return exp(0); }
    const Elt& lead_coeff() const { return coeff_[0]; }

    const std::vector<Elt>& coeffs_raw() const { return coeff_; }
    const std::vector<Exp>& exps_raw() const { return exps_; }

    void require_compatible(const Poly& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
            throw ring_mismatch_error("polynomials belong to different rings");
    }

    bool operator==(const Poly& o) const {
        if (ring_ != o.ring_) {
            if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_)) return false;
        }
        if (coeff_.size() != o.coeff_.size() || exps_ != o.exps_) return false;
        const K& F = ring_->field;
        for (size_t i = 0; i < coeff_.size(); ++i)
            if (!F.eq(coeff_[i], o.coeff_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        const K& F = ring_->field;
        for (auto& c : r.coeff_) c = F.neg(c);
        return r;
    }

    Poly operator+(const Poly& o) const { return merged(o, false); }
    Poly operator-(const Poly& o) const { return merged(o, true); }

    Poly operator*(const Poly& o) const {
        require_compatible(o);
        const size_t n = nvars();
        const K& F = ring_->field;
        if (is_zero() || o.is_zero()) return Poly(ring_);
        // accumulate into a hash map keyed by packed exponent bytes
        std::unordered_map<std::string, Elt> acc;
        acc.reserve(nterms() * o.nterms());
        std::vector<Exp> tmp(n);
        for (size_t i = 0; i < nterms(); ++i) {
            for (size_t j = 0; j < o.nterms(); ++j) {
                exp_mul(exp(i), o.exp(j), tmp.data());
                std::string key(reinterpret_cast<const char*>(tmp.data()),
                                n * sizeof(Exp));
                Elt prod = F.mul(coeff_[i], o.coeff_[j]);
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.emplace(std::move(key), std::move(prod));
                else
                    it->second = F.add(it->second, prod);
            }
        }
        std::vector<std::pair<std::vector<Exp>, Elt>> terms;
        terms.reserve(acc.size());
        for (auto& [key, c] : acc) {
            if (F.is_zero(c)) continue;
            std::vector<Exp> e(n);
            std::memcpy(e.data(), key.data(), n * sizeof(Exp));
            terms.emplace_back(std::move(e), std::move(c));
        }
        return from_terms(ring_, std::move(terms));
    }

    Poly scaled(const Elt& s) const {
        const K& F = ring_->field;
        if (F.is_zero(s)) return Poly(ring_);
        Poly r = *this;
        for (auto& c : r.coeff_) c = F.mul(c, s);
        return r;
    }

    // multiply by a single term c * x^m
    Poly term_multiplied(const Elt& c, ExpSpan m) const {
        const K& F = ring_->field;
        if (F.is_zero(c) || is_zero()) return Poly(ring_);
        Poly r(ring_);
        r.coeff_.reserve(nterms());
        r.exps_.resize(exps_.size());
        for (size_t i = 0; i < nterms(); ++i) {
            r.coeff_.push_back(F.mul(coeff_[i], c));
            exp_mul(exp(i), m, r.exps_.data() + i * nvars());
        }
        return r;
    }

    Poly pow(unsigned e) const {
        Poly r = constant(ring_, ring_->field.one());
        Poly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // formal partial derivative; in characteristic p the p-th powers die
    Poly derivative(int var) const {
        if (var < 0 || var >= static_cast<int>(nvars()))
            throw input_error("derivative: unknown variable");
        const K& F = ring_->field;
        std::vector<std::pair<std::vector<Exp>, Elt>> terms;
        for (size_t i = 0; i < nterms(); ++i) {
            ExpSpan e = exp(i);
            if (e[var] == 0) continue;
            Elt c = F.mul(coeff_[i], F.from_int(static_cast<long>(e[var])));
            if (F.is_zero(c)) continue;
            std::vector<Exp> ne(e.begin(), e.end());
            ne[var] -= 1;
            terms.emplace_back(std::move(ne), std::move(c));
        }
        return from_terms(ring_, std::move(terms));
    }

    Elt evaluate(const std::vector<Elt>& point) const {
        if (point.size() != nvars())
            throw input_error("evaluate: point length mismatch");
        const K& F = ring_->field;
        Elt acc = F.zero();
        for (size_t i = 0; i < nterms(); ++i) {
            Elt t = coeff_[i];
            ExpSpan e = exp(i);
            for (size_t v = 0; v < e.size(); ++v) {
                if (!e[v]) continue;
                Elt pw = point[v];
                unsigned n = e[v] - 1;
                Elt base = point[v];
                while (n) {
                    if (n & 1) pw = F.mul(pw, base);
                    base = F.mul(base, base);
                    n >>= 1;
                }
                t = F.mul(t, pw);
            }
            acc = F.add(acc, t);
        }
        return acc;
    }

    // substitute constants for a subset of the variables (std::nullopt keeps
    // the variable); result stays in the same ring
    Poly substituted(const std::vector<std::optional<Elt>>& assign) const {
        if (assign.size() != nvars())
            throw input_error("substituted: assignment length mismatch");
        const K& F = ring_->field;
        std::vector<std::pair<std::vector<Exp>, Elt>> terms;
        terms.reserve(nterms());
        for (size_t i = 0; i < nterms(); ++i) {
            ExpSpan e = exp(i);
            Elt c = coeff_[i];
            std::vector<Exp> ne(e.begin(), e.end());
            for (size_t v = 0; v < e.size(); ++v) {
                if (!assign[v] || !e[v]) continue;
                Elt pw = F.one();
                for (Exp k = 0; k < e[v]; ++k) pw = F.mul(pw, *assign[v]);
                c = F.mul(c, pw);
                ne[v] = 0;
            }
            if (!F.is_zero(c)) terms.emplace_back(std::move(ne), std::move(c));
        }
        return from_terms(ring_, std::move(terms));
    }

    long degree() const {
        if (is_zero()) throw input_error("degree of the zero polynomial");
        long d = 0;
        for (size_t i = 0; i < nterms(); ++i) d = std::max(d, total_degree(exp(i)));
        return d;
    }
    long degree_in(int var) const {
        if (is_zero()) throw input_error("degree of the zero polynomial");
        long d = 0;
        for (size_t i = 0; i < nterms(); ++i) d = std::max<long>(d, exp(i)[var]);
        return d;
    }
    std::vector<long> per_variable_degrees() const {
        if (is_zero()) throw input_error("degree of the zero polynomial");
        std::vector<long> d(nvars(), 0);
        for (size_t i = 0; i < nterms(); ++i) {
            ExpSpan e = exp(i);
            for (size_t v = 0; v < e.size(); ++v) d[v] = std::max<long>(d[v], e[v]);
        }
        return d;
    }
    std::vector<std::vector<Exp>> support() const {
        std::vector<std::vector<Exp>> s;
        s.reserve(nterms());
        for (size_t i = 0; i < nterms(); ++i) {
            ExpSpan e = exp(i);
            s.emplace_back(e.begin(), e.end());
        }
        return s;
    }
    // variables that actually appear
    std::vector<int> variables_used() const {
        std::vector<int> used;
        for (size_t v = 0; v < nvars(); ++v) {
            for (size_t i = 0; i < nterms(); ++i) {
                if (exp(i)[v]) {
                    used.push_back(static_cast<int>(v));
                    break;
                }
            }
        }
        return used;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        const K& F = ring_->field;
        std::string out;
        for (size_t i = 0; i < nterms(); ++i) {
            std::string cs = F.to_string(coeff_[i]);
            bool negative = !cs.empty() && cs[0] == '-';
            std::string mono = monomial_string(exp(i));
            std::string body;
            if (mono.empty()) {
                body = negative ? cs.substr(1) : cs;
                if (needs_parens(body)) body = "(" + body + ")";
            } else {
                std::string c = negative ? cs.substr(1) : cs;
                if (c == "1") {
                    body = mono;
                } else {
                    if (needs_parens(c)) c = "(" + c + ")";
                    body = c + "*" + mono;
                }
            }
            if (i == 0) {
                out = negative ? "-" + body : body;
            } else {
                out += negative ? "-" : "+";
                out += body;
            }
        }
        return out;
    }

  private:
    std::string monomial_string(ExpSpan e) const {
        std::string s;
        for (size_t v = 0; v < e.size(); ++v) {
            if (!e[v]) continue;
            if (!s.empty()) s += "*";
            s += ring_->vars[v];
            if (e[v] > 1) s += "^" + std::to_string(e[v]);
        }
        return s;
    }
    static bool needs_parens(const std::string& s) {
        return s.find('+') != std::string::npos ||
               s.find('-') != std::string::npos ||
               s.find('/') != std::string::npos;
    }

    Poly merged(const Poly& o, bool subtract) const {
        require_compatible(o);
        const size_t n = nvars();
        const K& F = ring_->field;
        const MonomialOrder& ord = ring_->order;
        Poly r(ring_);
        r.coeff_.reserve(nterms() + o.nterms());
        r.exps_.reserve(exps_.size() + o.exps_.size());
        size_t i = 0, j = 0;
        while (i < nterms() || j < o.nterms()) {
            int c;
            if (i == nterms())
                c = -1;
            else if (j == o.nterms())
                c = 1;
            else
                c = ord.cmp(exp(i), o.exp(j));
            if (c > 0) {
                r.push_term(coeff_[i], exp(i));
                ++i;
            } else if (c < 0) {
                Elt v = subtract ? F.neg(o.coeff_[j]) : o.coeff_[j];
                r.push_term(v, o.exp(j));
                ++j;
            } else {
                Elt v = subtract ? F.sub(coeff_[i], o.coeff_[j])
                                 : F.add(coeff_[i], o.coeff_[j]);
                if (!F.is_zero(v)) r.push_term(v, exp(i));
                ++i, ++j;
            }
        }
        (void)n;
        return r;
    }

    void push_term(Elt c, ExpSpan e) {
        coeff_.push_back(std::move(c));
        exps_.insert(exps_.end(), e.begin(), e.end());
    }

    RingPtr<K> ring_;
    std::vector<Elt> coeff_;
    std::vector<Exp> exps_;
};

// --- normalization -----------------------------------------------------------

template <class K>
Poly<K> make_monic(const Poly<K>& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.field().inv(f.lead_coeff()));
}

// Over Q: scale to coprime integer coefficients with positive leading
// coefficient (the reporting normal form for generators).
inline Poly<Rationals> primitive_integer(const Poly<Rationals>& f) {
    if (f.is_zero()) return f;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (size_t i = 0; i < f.nterms(); ++i) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                f.coeff(i).get_den().get_mpz_t());
    }
    for (size_t i = 0; i < f.nterms(); ++i) {
        mpq_class scaled = f.coeff(i) * den_lcm;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                scaled.get_num().get_mpz_t());
    }
    mpq_class s(den_lcm, num_gcd);
    s.canonicalize();
    if (f.lead_coeff() < 0) s = -s;
    return f.scaled(s);
}

// Canonical generator normal form: monic over finite fields, primitive
// integer with positive lead over Q.
template <class K>
Poly<K> normalized_generator(const Poly<K>& f) {
    return make_monic(f);
}
inline Poly<Rationals> normalized_generator(const Poly<Rationals>& f) {
    return primitive_integer(f);
}

// --- ring mapping helpers ----------------------------------------------------

// Re-sort a polynomial into a ring with the same base (vars+field) but a
// different monomial order.
template <class K>
Poly<K> convert_order(const Poly<K>& f, const RingPtr<K>& target) {
    if (!f.ring()->same_base(*target))
        throw ring_mismatch_error("convert_order: different base ring");
    std::vector<std::pair<std::vector<Exp>, typename K::Elt>> terms;
    terms.reserve(f.nterms());
    for (size_t i = 0; i < f.nterms(); ++i) {
        ExpSpan e = f.exp(i);
        terms.emplace_back(std::vector<Exp>(e.begin(), e.end()), f.coeff(i));
    }
    return Poly<K>::from_terms(target, std::move(terms));
}

// Map through a variable embedding: var_map[i] = index of source var i in the
// target ring, or -1 for variables that must not occur.
template <class K>
Poly<K> map_variables(const Poly<K>& f, const std::vector<int>& var_map,
                      const RingPtr<K>& target) {
    std::vector<std::pair<std::vector<Exp>, typename K::Elt>> terms;
    terms.reserve(f.nterms());
    for (size_t i = 0; i < f.nterms(); ++i) {
        ExpSpan e = f.exp(i);
        std::vector<Exp> ne(target->nvars(), 0);
        for (size_t v = 0; v < e.size(); ++v) {
            if (!e[v]) continue;
            if (var_map[v] < 0)
                throw structure_error("map_variables: variable " +
                                      f.ring()->vars[v] + " not representable");
            ne[var_map[v]] = e[v];
        }
        terms.emplace_back(std::move(ne), f.coeff(i));
    }
    return Poly<K>::from_terms(target, std::move(terms));
}

}  // namespace algmat

#endif  // ALGMAT_POLYNOMIAL_HPP
