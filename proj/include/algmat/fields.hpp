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

#ifndef ALGMAT_FIELDS_HPP
#define ALGMAT_FIELDS_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "common.hpp"

namespace algmat {

// A field is a small value-type "context" object; elements are plain values
// and all arithmetic goes through the context. This keeps GF(p) elements as
// bare integers and lets the same templates run over Q, GF(p) and GF(p^k).

// ---------------------------------------------------------------------------
// Q with arbitrary-precision rational coefficients.
// ---------------------------------------------------------------------------
class Rationals {
  public:
    using Elt = mpq_class;

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt from_int(long v) const { return Elt(v); }
    unsigned long characteristic() const { return 0; }

    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt inv(const Elt& a) const {
        if (a == 0) throw std::domain_error("division by zero in Q");
        return Elt(1) / a;
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elt& a) const { return a == 0; }
    bool is_one(const Elt& a) const { return a == 1; }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }

    std::string to_string(const Elt& a) const { return a.get_str(); }
    std::optional<Elt> parse(const std::string& s) const {
        mpq_class q;
        if (q.set_str(s, 10) != 0) return std::nullopt;
        q.canonicalize();
        return q;
    }

    bool operator==(const Rationals&) const { return true; }
};

// ---------------------------------------------------------------------------
// 64-bit modular arithmetic helpers.
// ---------------------------------------------------------------------------
namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin for 64-bit inputs
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                            23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// GF(p) for prime p up to 2^62 (large enough for random-prime rank probes).
// ---------------------------------------------------------------------------
class PrimeField {
  public:
    using Elt = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!detail::is_prime_u64(p)) {
            throw input_error("GF(p): modulus " + std::to_string(p) + " is not prime");
        }
        if (p >= (1ULL << 62)) throw input_error("GF(p): p too large (>= 2^62)");
    }

    std::uint64_t modulus() const { return p_; }
    unsigned long characteristic() const { return static_cast<unsigned long>(p_); }

    Elt zero() const { return 0; }
    Elt one() const { return 1 % p_; }
    Elt from_int(long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elt>(r);
    }

    Elt add(Elt a, Elt b) const {
        Elt s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p_ - b; }
    Elt mul(Elt a, Elt b) const { return detail::mulmod_u64(a, b, p_); }
    Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("division by zero in GF(p)");
        return detail::powmod_u64(a, p_ - 2, p_);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    bool is_zero(Elt a) const { return a == 0; }
    bool is_one(Elt a) const { return a == one(); }
    bool eq(Elt a, Elt b) const { return a == b; }

    std::string to_string(Elt a) const { return std::to_string(a); }
    std::optional<Elt> parse(const std::string& s) const {
        try {
            size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) return std::nullopt;
            return from_int(static_cast<long>(v));
        } catch (...) {
            return std::nullopt;
        }
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  private:
    std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// GF(p^k) = GF(p)[g]/(modulus), modulus monic irreducible of degree k.
// Elements are stored as the integer sum(d_i * p^i) of their digit vectors.
// Intended for tiny fields (the fixtures need GF(2) and GF(4)); q must fit
// in 32 bits and multiplication tables are built for q <= 256.
// ---------------------------------------------------------------------------
class ExtField {
  public:
    using Elt = std::uint64_t;

    // modulus: coefficients c_0..c_k with c_k = 1, as elements of GF(p)
    ExtField(std::uint64_t p, std::vector<std::uint64_t> modulus,
             std::string generator = "L")
        : p_(p), mod_(std::move(modulus)), gen_(std::move(generator)) {
        if (!detail::is_prime_u64(p_)) {
            throw input_error("GF(p^k): characteristic must be prime");
        }
        if (mod_.size() < 2) throw input_error("GF(p^k): modulus must have degree >= 1");
        k_ = static_cast<unsigned>(mod_.size() - 1);
        for (auto& c : mod_) c %= p_;
        if (mod_.back() != 1) throw input_error("GF(p^k): modulus must be monic");
        double qd = 1;
        for (unsigned i = 0; i < k_; ++i) qd *= static_cast<double>(p_);
        if (qd > 4294967296.0) throw input_error("GF(p^k): field too large (q > 2^32)");
        q_ = 1;
        for (unsigned i = 0; i < k_; ++i) q_ *= p_;
        if (!irreducible_mod_p()) {
            throw input_error("GF(p^k): modulus polynomial is reducible over GF(p)");
        }
        if (q_ <= 256) build_tables();
    }

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint64_t size() const { return q_; }
    const std::string& generator_name() const { return gen_; }
    unsigned long characteristic() const { return static_cast<unsigned long>(p_); }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt generator() const { return k_ > 1 ? p_ : 0; }  // the class of g
    Elt from_int(long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elt>(r);
    }

    Elt add(Elt a, Elt b) const {
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return add_generic(a, b);
    }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt neg(Elt a) const {
        Elt r = 0, pw = 1;
        for (unsigned i = 0; i < k_; ++i) {
            std::uint64_t d = (a / pw) % p_;
            r += ((p_ - d) % p_) * pw;
            pw *= p_;
        }
        return r;
    }
    Elt mul(Elt a, Elt b) const {
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        return mul_generic(a, b);
    }
    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("division by zero in GF(p^k)");
        if (!inv_tab_.empty()) return inv_tab_[a];
        // a^(q-2)
        Elt r = 1, base = a;
        std::uint64_t e = q_ - 2;
        while (e) {
            if (e & 1) r = mul_generic(r, base);
            base = mul_generic(base, base);
            e >>= 1;
        }
        return r;
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    bool is_zero(Elt a) const { return a == 0; }
    bool is_one(Elt a) const { return a == 1; }
    bool eq(Elt a, Elt b) const { return a == b; }

    std::optional<Elt> parse(const std::string& s) const {
        try {
            size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) return std::nullopt;
            return from_int(static_cast<long>(v));
        } catch (...) {
            return std::nullopt;
        }
    }

    // prints as a GF(p)[g] residue, e.g. "L+1"; constants print as integers
    std::string to_string(Elt a) const {
        if (a < p_) return std::to_string(a);
        std::string s;
        Elt pw = 1;
        std::vector<std::uint64_t> d(k_);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = (a / pw) % p_;
            pw *= p_;
        }
        for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
            if (d[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(d[i]);
            } else {
                if (d[i] != 1) s += std::to_string(d[i]) + "*";
                s += gen_;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

    bool operator==(const ExtField& o) const {
        return p_ == o.p_ && mod_ == o.mod_ && gen_ == o.gen_;
    }

  private:
    Elt add_generic(Elt a, Elt b) const {
        Elt r = 0, pw = 1;
        for (unsigned i = 0; i < k_; ++i) {
            std::uint64_t s = ((a / pw) % p_ + (b / pw) % p_) % p_;
            r += s * pw;
            pw *= p_;
        }
        return r;
    }

    Elt mul_generic(Elt a, Elt b) const {
        // digit convolution followed by reduction mod the modulus polynomial
        std::vector<std::uint64_t> da(k_), db(k_), prod(2 * k_ - 1, 0);
        Elt pw = 1;
        for (unsigned i = 0; i < k_; ++i) {
            da[i] = (a / pw) % p_;
            db[i] = (b / pw) % p_;
            pw *= p_;
        }
        for (unsigned i = 0; i < k_; ++i) {
            if (!da[i]) continue;
            for (unsigned j = 0; j < k_; ++j) {
                if (!db[j]) continue;
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            }
        }
        for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(k_); --d) {
            std::uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k_; ++i) {
                // x^d = x^(d-k) * (-mod_[0..k-1])
                std::uint64_t t = (c * (p_ - mod_[i])) % p_;
                prod[d - k_ + i] = (prod[d - k_ + i] + t) % p_;
            }
        }
        Elt r = 0;
        pw = 1;
        for (unsigned i = 0; i < k_; ++i) {
            r += prod[i] * pw;
            pw *= p_;
        }
        return r;
    }

    // exhaustive irreducibility test: no roots and no monic factor of
    // degree <= k/2 (moduli are tiny, so brute force is fine)
    bool irreducible_mod_p() const {
        auto eval = [&](std::uint64_t x) {
            std::uint64_t v = 0;
            for (int i = static_cast<int>(k_); i >= 0; --i) v = (v * x + mod_[i]) % p_;
            return v;
        };
        for (std::uint64_t x = 0; x < p_; ++x)
            if (eval(x) == 0) return false;
        if (k_ <= 3) return true;  // no root => irreducible for deg <= 3
        // trial division by monic polynomials of degree 2..k/2
        for (unsigned d = 2; d <= k_ / 2; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::uint64_t> f(d + 1, 0);
                f[d] = 1;
                std::uint64_t c = code;
                for (unsigned i = 0; i < d; ++i) {
                    f[i] = c % p_;
                    c /= p_;
                }
                if (divides(f)) return false;
            }
        }
        return true;
    }

    bool divides(const std::vector<std::uint64_t>& f) const {
        // remainder of modulus / f over GF(p)
        std::vector<std::uint64_t> r = mod_;
        unsigned df = static_cast<unsigned>(f.size() - 1);
        while (r.size() >= f.size()) {
            std::uint64_t lead = r.back();
            if (lead != 0) {
                unsigned shift = static_cast<unsigned>(r.size() - f.size());
                for (unsigned i = 0; i <= df; ++i) {
                    r[shift + i] = (r[shift + i] + (p_ - (lead * f[i]) % p_)) % p_;
                }
            }
            r.pop_back();
        }
        for (auto c : r)
            if (c) return false;
        return true;
    }

    void build_tables() {
        mul_tab_.resize(q_ * q_);
        add_tab_.resize(q_ * q_);
        inv_tab_.resize(q_);
        for (std::uint64_t a = 0; a < q_; ++a) {
            for (std::uint64_t b = 0; b < q_; ++b) {
                mul_tab_[a * q_ + b] = mul_generic(a, b);
                add_tab_[a * q_ + b] = add_generic(a, b);
            }
        }
        inv_tab_[0] = 0;
        for (std::uint64_t a = 1; a < q_; ++a) {
            for (std::uint64_t b = 1; b < q_; ++b) {
                if (mul_tab_[a * q_ + b] == 1) {
                    inv_tab_[a] = b;
                    break;
                }
            }
        }
    }

    std::uint64_t p_;
    std::vector<std::uint64_t> mod_;
    std::string gen_;
    unsigned k_ = 1;
    std::uint64_t q_ = 0;
    std::vector<Elt> mul_tab_, add_tab_, inv_tab_;
};

// ---------------------------------------------------------------------------
// Runtime field descriptor, used by problem files and the CLI.
// ---------------------------------------------------------------------------
struct FieldSpec {
    enum class Kind { rationals, prime, extension };
    Kind kind = Kind::rationals;
    std::uint64_t p = 0;
    unsigned k = 1;
    std::vector<std::uint64_t> modulus;  // degree-k monic, coefficients in GF(p)
    std::string generator = "L";

    static FieldSpec Q() { return FieldSpec{}; }
    static FieldSpec GF(std::uint64_t p) {
        FieldSpec f;
        f.kind = Kind::prime;
        f.p = p;
        return f;
    }
    static FieldSpec GFext(std::uint64_t p, std::vector<std::uint64_t> mod,
                           std::string gen = "L") {
        FieldSpec f;
        f.kind = Kind::extension;
        f.p = p;
        f.k = static_cast<unsigned>(mod.size() - 1);
        f.modulus = std::move(mod);
        f.generator = std::move(gen);
        return f;
    }

    unsigned long characteristic() const {
        return kind == Kind::rationals ? 0 : static_cast<unsigned long>(p);
    }

    std::string describe() const {
        switch (kind) {
            case Kind::rationals:
                return "Q";
            case Kind::prime:
                return "GF(" + std::to_string(p) + ")";
            case Kind::extension: {
                std::uint64_t q = 1;
                for (unsigned i = 0; i < k; ++i) q *= p;
                return "GF(" + std::to_string(q) + ")";
            }
        }
        return "?";
    }
};

// Calls fn with the concrete field object for a runtime FieldSpec.
template <class Fn>
auto dispatch_field(const FieldSpec& fs, Fn&& fn) {
    switch (fs.kind) {
        case FieldSpec::Kind::rationals:
            return fn(Rationals{});
        case FieldSpec::Kind::prime:
            return fn(PrimeField{fs.p});
        case FieldSpec::Kind::extension:
            return fn(ExtField{fs.p, fs.modulus, fs.generator});
    }
    throw input_error("unknown field kind");
}

}  // namespace algmat

#endif  // ALGMAT_FIELDS_HPP
