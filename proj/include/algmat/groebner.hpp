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

#ifndef ALGMAT_GROEBNER_HPP
#define ALGMAT_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "variety.hpp"

namespace algmat {

// Explicit resource budgets. Exceeding one raises budget_exceeded, which is
// distinguishable from any mathematical failure; results are never silently
// truncated.
struct Budget {
    std::uint64_t max_pair_reductions = 2'000'000;
    std::size_t max_basis = 20'000;
    std::uint64_t max_reduction_steps = std::uint64_t(1) << 62;
};

template <class K>
struct GroebnerBasis {
    RingPtr<K> ring;  // carries the monomial order the basis was computed in
    std::vector<Poly<K>> basis;  // reduced, monic, ascending leading terms

    bool is_zero_ideal() const { return basis.empty(); }
    bool is_unit_ideal() const {
        return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
    }
};

namespace detail {

// Geobucket accumulator for polynomial reduction: runs of sorted terms in
// geometrically capped buckets, so each subtraction costs O(|run| log) instead
// of a full merge against the whole intermediate result.
template <class K>
class Geobucket {
  public:
    using Elt = typename K::Elt;

    Geobucket(const K& F, const MonomialOrder& ord, size_t nvars)
        : F_(F), ord_(ord), n_(nvars) {}

    bool empty_hint() const {
        for (const auto& r : runs_)
            if (r.head < r.c.size()) return false;
        return true;
    }

    void add_poly(const Poly<K>& p, size_t from) {
        if (from >= p.nterms()) return;
        Run r;
        r.c.assign(p.coeffs_raw().begin() + from, p.coeffs_raw().end());
        r.e.assign(p.exps_raw().begin() + from * n_, p.exps_raw().end());
        insert(std::move(r));
    }

    // adds  scale * x^shift * p[from..]
    void add_scaled(const Poly<K>& p, size_t from, const Elt& scale, ExpSpan shift) {
        if (from >= p.nterms() || F_.is_zero(scale)) return;
        Run r;
        const size_t m = p.nterms() - from;
        r.c.reserve(m);
        r.e.resize(m * n_);
        for (size_t i = from; i < p.nterms(); ++i) {
            r.c.push_back(F_.mul(p.coeff(i), scale));
            exp_mul(p.exp(i), shift, r.e.data() + (i - from) * n_);
        }
        insert(std::move(r));
    }

    // pops the (combined) leading term; false when the bucket is empty
    bool next_term(std::vector<Exp>& mono, Elt& c) {
        for (;;) {
            int best = -1;
            for (size_t i = 0; i < runs_.size(); ++i) {
                if (runs_[i].head == runs_[i].c.size()) continue;
                if (best < 0 ||
                    ord_.cmp(head_exp(i), head_exp(static_cast<size_t>(best))) > 0)
                    best = static_cast<int>(i);
            }
            if (best < 0) return false;
            mono.assign(head_exp(static_cast<size_t>(best)).begin(),
                        head_exp(static_cast<size_t>(best)).end());
            c = F_.zero();
            for (auto& r : runs_) {
                while (r.head < r.c.size() &&
                       std::equal(mono.begin(), mono.end(),
                                  r.e.data() + r.head * n_)) {
                    c = F_.add(c, r.c[r.head]);
                    ++r.head;
                }
            }
            if (!F_.is_zero(c)) return true;
        }
    }

  private:
    struct Run {
        std::vector<Elt> c;
        std::vector<Exp> e;
        size_t head = 0;
        size_t size() const { return c.size() - head; }
    };

    ExpSpan head_exp(size_t i) const {
        return ExpSpan(runs_[i].e.data() + runs_[i].head * n_, n_);
    }
    static size_t cap(size_t i) { return size_t(1) << (2 * (i + 2)); }

    void insert(Run r) {
        size_t i = 0;
        while (cap(i) < r.size()) ++i;
        for (;;) {
            if (i >= runs_.size()) {
                runs_.resize(i + 1);
            }
            if (runs_[i].size() == 0) {
                runs_[i] = std::move(r);
                return;
            }
            r = merge(std::move(runs_[i]), std::move(r));
            runs_[i] = Run{};
            if (r.size() <= cap(i)) {
                runs_[i] = std::move(r);
                return;
            }
            ++i;
        }
    }

    Run merge(Run a, Run b) {
        Run out;
        out.c.reserve(a.size() + b.size());
        out.e.reserve((a.size() + b.size()) * n_);
        size_t i = a.head, j = b.head;
        while (i < a.c.size() || j < b.c.size()) {
            int cmp;
            if (i == a.c.size())
                cmp = -1;
            else if (j == b.c.size())
                cmp = 1;
            else
                cmp = ord_.cmp(ExpSpan(a.e.data() + i * n_, n_),
                               ExpSpan(b.e.data() + j * n_, n_));
            if (cmp > 0) {
                out.c.push_back(std::move(a.c[i]));
                out.e.insert(out.e.end(), a.e.begin() + i * n_, a.e.begin() + (i + 1) * n_);
                ++i;
            } else if (cmp < 0) {
                out.c.push_back(std::move(b.c[j]));
                out.e.insert(out.e.end(), b.e.begin() + j * n_, b.e.begin() + (j + 1) * n_);
                ++j;
            } else {
                Elt s = F_.add(a.c[i], b.c[j]);
                if (!F_.is_zero(s)) {
                    out.c.push_back(std::move(s));
                    out.e.insert(out.e.end(), a.e.begin() + i * n_,
                                 a.e.begin() + (i + 1) * n_);
                }
                ++i, ++j;
            }
        }
        return out;
    }

    const K& F_;
    const MonomialOrder& ord_;
    size_t n_;
    std::vector<Run> runs_;
};

// Full normal form against a reducer list (leading and tail terms).
// Reducers must be nonzero; `skip` excludes one index (self-reduction).
template <class K>
Poly<K> reduce_full(const Poly<K>& f, const std::vector<Poly<K>>& reducers,
                    const std::vector<char>* active, int skip,
                    const MonomialOrder& ord, const Budget& budget,
                    std::uint64_t* steps, long* sugar) {
    const K& F = f.ring()->field;
    const size_t n = f.nvars();
    Geobucket<K> bucket(F, ord, n);
    bucket.add_poly(f, 0);

    std::vector<typename K::Elt> out_c;
    std::vector<Exp> out_e;
    std::vector<Exp> mono(n), quot(n);
    typename K::Elt c = F.zero();

    while (bucket.next_term(mono, c)) {
        long mdeg = total_degree(ExpSpan(mono));
        int red = -1;
        for (size_t i = 0; i < reducers.size(); ++i) {
            if (static_cast<int>(i) == skip) continue;
            if (active && !(*active)[i]) continue;
            ExpSpan lt = reducers[i].lead_exp();
            if (total_degree(lt) > mdeg) continue;
            if (divides(lt, ExpSpan(mono))) {
                red = static_cast<int>(i);
                break;
            }
        }
        if (red < 0) {
            out_c.push_back(c);
            out_e.insert(out_e.end(), mono.begin(), mono.end());
            continue;
        }
        const Poly<K>& g = reducers[red];
        exp_div(ExpSpan(mono), g.lead_exp(), quot.data());
        if (sugar) {
            long s = *sugar;
            long cand = (g.is_zero() ? 0 : g.degree()) + total_degree(ExpSpan(quot));
            *sugar = std::max(s, cand);
        }
        // cancel: subtract (c / lc(g)) * x^quot * g; the head cancels exactly
        auto scale = F.neg(F.div(c, g.lead_coeff()));
        bucket.add_scaled(g, 1, scale, ExpSpan(quot));
        if (steps) {
            if (++(*steps) > budget.max_reduction_steps)
                throw budget_exceeded("reduction step budget exceeded");
        }
    }
    return Poly<K>::from_sorted(f.ring(), std::move(out_c), std::move(out_e));
}

// Buchberger with the Gebauer-Moeller pair update and sugar selection.
template <class K>
class GBEngine {
  public:
    GBEngine(RingPtr<K> ring, Budget budget)
        : ring_(std::move(ring)), F_(ring_->field), budget_(budget) {}

    void add_generator(const Poly<K>& g0) {
        Poly<K> g = convert_order(g0, ring_);
        std::uint64_t steps = 0;
        long sugar = g.is_zero() ? 0 : g.degree();
        Poly<K> h = reduce_full(g, basis_, &active_, -1, ring_->order, budget_,
                                &steps, &sugar);
        if (!h.is_zero()) insert(normalized_generator(h), sugar);
    }

    void run() {
        std::vector<Exp> lcm_ij(ring_->nvars());
        while (!queue_.empty()) {
            SPair sp = pop_pair();
            if (sp.i < 0) break;  // queue drained by lazy deletion
            if (++pairs_done_ > budget_.max_pair_reductions)
                throw budget_exceeded("pair reduction budget exceeded");
            Poly<K> s = s_polynomial(sp);
            long sugar = sp.sugar;
            Poly<K> h = reduce_full(s, basis_, &active_, -1, ring_->order,
                                    budget_, &steps_, &sugar);
            if (h.is_zero()) continue;
            insert(normalized_generator(h), sugar);
        }
    }

    std::uint64_t pairs_done() const { return pairs_done_; }

    // minimal + tail-reduced + monic, ascending leading terms
    std::vector<Poly<K>> reduced_basis() {
        std::vector<int> keep;
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (!active_[i]) continue;
            bool minimal = true;
            for (size_t j = 0; j < basis_.size(); ++j) {
                if (j == i || !active_[j]) continue;
                const int c = ring_->order.cmp(basis_[j].lead_exp(), basis_[i].lead_exp());
                if (divides(basis_[j].lead_exp(), basis_[i].lead_exp()) &&
                    (c != 0 || j < i)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) keep.push_back(static_cast<int>(i));
        }
        std::vector<Poly<K>> out;
        out.reserve(keep.size());
        for (int i : keep) out.push_back(basis_[i]);
        // tail-reduce each element against the others until stable
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < out.size(); ++i) {
                Poly<K> h = reduce_full(out[i], out, nullptr, static_cast<int>(i),
                                        ring_->order, budget_, &steps_, nullptr);
                if (!(h == out[i])) {
                    out[i] = h;
                    changed = true;
                }
            }
        }
        for (auto& p : out) p = make_monic(p);
        std::sort(out.begin(), out.end(), [&](const Poly<K>& a, const Poly<K>& b) {
            return ring_->order.cmp(a.lead_exp(), b.lead_exp()) < 0;
        });
        return out;
    }

  private:
    struct SPair {
        int i = -1, j = -1;
        std::vector<Exp> lcm;
        long sugar = 0;
        long lcmdeg = 0;
    };

    Poly<K> s_polynomial(const SPair& sp) {
        // cross-scaled S-pair: lc(g)*u_f*f - lc(f)*u_g*g (no division)
        const Poly<K>&f = basis_[sp.i], &g = basis_[sp.j];
        std::vector<Exp> uf(ring_->nvars()), ug(ring_->nvars());
        exp_div(ExpSpan(sp.lcm), f.lead_exp(), uf.data());
        exp_div(ExpSpan(sp.lcm), g.lead_exp(), ug.data());
        Poly<K> a = f.term_multiplied(g.lead_coeff(), ExpSpan(uf));
        Poly<K> b = g.term_multiplied(f.lead_coeff(), ExpSpan(ug));
        return a - b;
    }

    SPair pop_pair() {
        while (!queue_.empty()) {
            std::pop_heap(queue_.begin(), queue_.end(), later_);
            SPair sp = std::move(queue_.back());
            queue_.pop_back();
            if (!dead_.count({sp.i, sp.j})) return sp;
        }
        return SPair{};
    }

    void insert(Poly<K> h, long sugar) {
        const int t = static_cast<int>(basis_.size());
        if (basis_.size() + 1 > budget_.max_basis)
            throw budget_exceeded("basis size budget exceeded");
        basis_.push_back(std::move(h));
        active_.push_back(1);
        sugar_.push_back(sugar);
        const Poly<K>& ht = basis_[t];
        const size_t n = ring_->nvars();

        // candidate new pairs (i, t) for live i
        struct Cand {
            int i;
            std::vector<Exp> lcm;
            long deg;
            bool coprime;
        };
        std::vector<Cand> cand;
        for (int i = 0; i < t; ++i) {
            if (!active_[i]) continue;
            Cand c;
            c.i = i;
            c.lcm.resize(n);
            exp_lcm(basis_[i].lead_exp(), ht.lead_exp(), c.lcm.data());
            c.deg = total_degree(ExpSpan(c.lcm));
            c.coprime = exp_coprime(basis_[i].lead_exp(), ht.lead_exp());
            cand.push_back(std::move(c));
        }
        // Gebauer-Moeller rule D: retire old pairs strictly subsumed by t
        for (const SPair& sp : queue_) {
            if (dead_.count({sp.i, sp.j})) continue;
            if (!divides(ht.lead_exp(), ExpSpan(sp.lcm))) continue;
            std::vector<Exp> l1(n), l2(n);
            exp_lcm(basis_[sp.i].lead_exp(), ht.lead_exp(), l1.data());
            exp_lcm(basis_[sp.j].lead_exp(), ht.lead_exp(), l2.data());
            if (!std::equal(l1.begin(), l1.end(), sp.lcm.begin()) &&
                !std::equal(l2.begin(), l2.end(), sp.lcm.begin())) {
                dead_.insert({sp.i, sp.j});
            }
        }
        // rule M: drop candidates whose lcm is a strict multiple of another's
        std::vector<char> drop(cand.size(), 0);
        for (size_t a = 0; a < cand.size(); ++a) {
            for (size_t b = 0; b < cand.size(); ++b) {
                if (a == b || drop[a]) continue;
                if (drop[b]) continue;
                if (cand[b].lcm != cand[a].lcm &&
                    divides(ExpSpan(cand[b].lcm), ExpSpan(cand[a].lcm))) {
                    drop[a] = 1;
                }
            }
        }
        // rule F: among equal lcms keep the lowest index
        for (size_t a = 0; a < cand.size(); ++a) {
            if (drop[a]) continue;
            for (size_t b = a + 1; b < cand.size(); ++b) {
                if (drop[b]) continue;
                if (cand[a].lcm == cand[b].lcm) drop[b] = 1;
            }
        }
        // rule B: the product criterion
        for (size_t a = 0; a < cand.size(); ++a)
            if (!drop[a] && cand[a].coprime) drop[a] = 1;

        for (size_t a = 0; a < cand.size(); ++a) {
            if (drop[a]) continue;
            SPair sp;
            sp.i = cand[a].i;
            sp.j = t;
            sp.lcm = cand[a].lcm;
            sp.lcmdeg = cand[a].deg;
            long si = sugar_[sp.i] + (cand[a].deg - total_degree(basis_[sp.i].lead_exp()));
            long sj = sugar_[t] + (cand[a].deg - total_degree(ht.lead_exp()));
            sp.sugar = std::max(si, sj);
            queue_.push_back(std::move(sp));
            std::push_heap(queue_.begin(), queue_.end(), later_);
        }
        // retire basis elements whose lead is now divisible by LT(t)
        for (int i = 0; i < t; ++i) {
            if (active_[i] && divides(ht.lead_exp(), basis_[i].lead_exp()))
                active_[i] = 0;
        }
    }

    RingPtr<K> ring_;
    const K& F_;
    Budget budget_;
    std::vector<Poly<K>> basis_;
    std::vector<char> active_;
    std::vector<long> sugar_;
    std::vector<SPair> queue_;
    std::set<std::pair<int, int>> dead_;
    std::uint64_t pairs_done_ = 0;
    std::uint64_t steps_ = 0;

    // min-heap comparator: a "later" than b
    struct Later {
        const MonomialOrder* ord;
        bool operator()(const SPair& a, const SPair& b) const {
            if (a.sugar != b.sugar) return a.sugar > b.sugar;
            if (a.lcmdeg != b.lcmdeg) return a.lcmdeg > b.lcmdeg;
            int c = ord->cmp(ExpSpan(a.lcm), ExpSpan(b.lcm));
            if (c != 0) return c > 0;
            if (a.i != b.i) return a.i > b.i;
            return a.j > b.j;
        }
    } later_{&ring_->order};
};

}  // namespace detail

// ---------------------------------------------------------------------------
// public Groebner interface
// ---------------------------------------------------------------------------

template <class K>
GroebnerBasis<K> buchberger(const IdealPresentation<K>& I, MonomialOrder ord,
                            const Budget& budget = {}) {
    RingPtr<K> ring = with_order(I.ring, std::move(ord));
    detail::GBEngine<K> eng(ring, budget);
    std::vector<Poly<K>> gens = I.gens;
    std::sort(gens.begin(), gens.end(), [&](const Poly<K>& a, const Poly<K>& b) {
        long da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.nterms() < b.nterms();
    });
    for (const auto& g : gens) eng.add_generator(g);
    eng.run();
    return GroebnerBasis<K>{ring, eng.reduced_basis()};
}

template <class K>
GroebnerBasis<K> buchberger(const IdealPresentation<K>& I, const Budget& budget = {}) {
    return buchberger(I, MonomialOrder::Grevlex(), budget);
}

template <class K>
Poly<K> normal_form(const Poly<K>& f, const GroebnerBasis<K>& gb,
                    const Budget& budget = {}) {
    if (!f.ring()->same_base(*gb.ring))
        throw ring_mismatch_error("normal_form: different rings");
    Poly<K> g = convert_order(f, gb.ring);
    std::uint64_t steps = 0;
    return detail::reduce_full(g, gb.basis, nullptr, -1, gb.ring->order, budget,
                               &steps, nullptr);
}

template <class K>
bool in_ideal(const Poly<K>& f, const GroebnerBasis<K>& gb, const Budget& b = {}) {
    return normal_form(f, gb, b).is_zero();
}

// Buchberger criterion, used by tests on every emitted basis: all S-pair
// normal forms vanish.
template <class K>
bool buchberger_criterion(const GroebnerBasis<K>& gb, const Budget& budget = {}) {
    const size_t n = gb.ring->nvars();
    std::vector<Exp> lcm(n), uf(n), ug(n);
    for (size_t i = 0; i < gb.basis.size(); ++i) {
        for (size_t j = i + 1; j < gb.basis.size(); ++j) {
            const Poly<K>&f = gb.basis[i], &g = gb.basis[j];
            exp_lcm(f.lead_exp(), g.lead_exp(), lcm.data());
            exp_div(ExpSpan(lcm), f.lead_exp(), uf.data());
            exp_div(ExpSpan(lcm), g.lead_exp(), ug.data());
            Poly<K> s = f.term_multiplied(g.lead_coeff(), ExpSpan(uf)) -
                        g.term_multiplied(f.lead_coeff(), ExpSpan(ug));
            if (!normal_form(s, gb, budget).is_zero()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// dimension / degree
// ---------------------------------------------------------------------------

namespace detail {

// Minimum hitting set over variable-support masks, branch and bound. The
// Krull dimension of R/I is nvars minus the smallest set of variables meeting
// the support of every leading monomial.
inline void min_hit_rec(const std::vector<std::uint64_t>& supports, size_t idx,
                        int chosen, std::uint64_t hit, int& best) {
    if (chosen >= best) return;
    // next unhit support
    size_t next = supports.size();
    for (size_t i = idx; i < supports.size(); ++i) {
        if (!(supports[i] & hit)) {
            next = i;
            break;
        }
    }
    if (next == supports.size()) {
        best = chosen;
        return;
    }
    std::uint64_t s = supports[next];
    while (s) {
        std::uint64_t v = s & (~s + 1);
        s ^= v;
        min_hit_rec(supports, next + 1, chosen + 1, hit | v, best);
    }
}

inline int min_hitting_set(std::vector<std::uint64_t> supports, int nvars) {
    // keep only minimal supports
    std::sort(supports.begin(), supports.end(),
              [](std::uint64_t a, std::uint64_t b) {
                  return __builtin_popcountll(a) < __builtin_popcountll(b);
              });
    std::vector<std::uint64_t> min;
    for (auto s : supports) {
        bool dominated = false;
        for (auto m : min) {
            if ((m & s) == m) {
                dominated = true;
                break;
            }
        }
        if (!dominated) min.push_back(s);
    }
    int best = nvars;
    min_hit_rec(min, 0, 0, 0, best);
    return best;
}

}  // namespace detail

// Krull dimension of k[vars]/I from a Groebner basis, computed combinatorially
// from the leading-term ideal. Throws on the unit ideal.
template <class K>
int dimension(const GroebnerBasis<K>& gb) {
    if (gb.is_unit_ideal())
        throw structure_error("dimension: unit ideal (empty variety)");
    const int n = static_cast<int>(gb.ring->nvars());
    if (n > 63) throw input_error("dimension: too many variables");
    std::vector<std::uint64_t> supports;
    supports.reserve(gb.basis.size());
    for (const auto& g : gb.basis) {
        ExpSpan lt = g.lead_exp();
        std::uint64_t m = 0;
        for (size_t v = 0; v < lt.size(); ++v)
            if (lt[v]) m |= std::uint64_t(1) << v;
        supports.push_back(m);
    }
    return n - detail::min_hitting_set(std::move(supports), n);
}

template <class K>
int height(const GroebnerBasis<K>& gb) {
    return static_cast<int>(gb.ring->nvars()) - dimension(gb);
}

template <class K>
int dimension(const IdealPresentation<K>& I, const Budget& b = {}) {
    return dimension(buchberger(I, MonomialOrder::Grevlex(), b));
}

// Number of standard monomials (monomials outside the leading-term ideal) of
// a zero-dimensional ideal = vector-space dimension of the quotient = degree.
template <class K>
long zero_dim_degree(const GroebnerBasis<K>& gb) {
    if (gb.is_unit_ideal()) return 0;
    const size_t n = gb.ring->nvars();
    // zero-dimensional iff every variable has a pure-power leading term
    std::vector<long> bound(n, -1);
    for (const auto& g : gb.basis) {
        ExpSpan lt = g.lead_exp();
        int var = -1;
        bool pure = true;
        for (size_t v = 0; v < n; ++v) {
            if (!lt[v]) continue;
            if (var >= 0) {
                pure = false;
                break;
            }
            var = static_cast<int>(v);
        }
        if (pure && var >= 0) {
            if (bound[var] < 0 || lt[var] < bound[var]) bound[var] = lt[var];
        }
    }
    double box = 1;
    for (size_t v = 0; v < n; ++v) {
        if (bound[v] < 0)
            throw structure_error("zero_dim_degree: ideal is not zero-dimensional");
        box *= static_cast<double>(bound[v]);
        if (box > 1e7) throw budget_exceeded("zero_dim_degree: box too large");
    }
    std::vector<ExpSpan> lts;
    lts.reserve(gb.basis.size());
    for (const auto& g : gb.basis) lts.push_back(g.lead_exp());
    std::vector<Exp> m(n, 0);
    long count = 0;
    // odometer over the bounding box
    for (;;) {
        bool standard = true;
        for (ExpSpan lt : lts) {
            if (divides(lt, ExpSpan(m))) {
                standard = false;
                break;
            }
        }
        if (standard) ++count;
        size_t v = 0;
        while (v < n) {
            if (++m[v] < bound[v]) break;
            m[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    return count;
}

// ---------------------------------------------------------------------------
// elimination
// ---------------------------------------------------------------------------

template <class K>
struct EliminationResult {
    IdealPresentation<K> ideal;  // P ∩ k[S], presented in the subring on S
    GroebnerBasis<K> sub_gb;     // same generators, as a reduced GB (grevlex on S)
    std::vector<int> kept;       // indices of S in the original ring
};

// P ∩ k[S] via a block order with the eliminated variables in front.
template <class K>
EliminationResult<K> eliminate(const IdealPresentation<K>& I,
                               const std::vector<int>& keep,
                               const Budget& budget = {}) {
    const size_t n = I.ring->nvars();
    std::vector<std::uint8_t> front(n, 1);
    std::vector<std::string> subvars;
    for (int v : keep) {
        if (v < 0 || v >= static_cast<int>(n))
            throw input_error("eliminate: variable index out of range");
        front[v] = 0;
    }
    for (size_t v = 0; v < n; ++v)
        if (!front[v]) subvars.push_back(I.ring->vars[v]);

    GroebnerBasis<K> gb =
        buchberger(I, MonomialOrder::Block(front, MonomialOrder::Kind::grevlex), budget);

    RingPtr<K> subring = make_ring<K>(I.ring->field, subvars, MonomialOrder::Grevlex());
    std::vector<int> var_map(n, -1);
    {
        int idx = 0;
        for (size_t v = 0; v < n; ++v)
            if (!front[v]) var_map[v] = idx++;
    }
    std::vector<Poly<K>> kept_polys;
    for (const auto& g : gb.basis) {
        bool inside = true;
        for (size_t t = 0; t < g.nterms() && inside; ++t) {
            ExpSpan e = g.exp(t);
            for (size_t v = 0; v < n; ++v) {
                if (front[v] && e[v]) {
                    inside = false;
                    break;
                }
            }
        }
        if (inside) kept_polys.push_back(map_variables(g, var_map, subring));
    }
    std::sort(kept_polys.begin(), kept_polys.end(),
              [&](const Poly<K>& a, const Poly<K>& b) {
                  return subring->order.cmp(a.lead_exp(), b.lead_exp()) < 0;
              });
    EliminationResult<K> out;
    out.kept.assign(keep.begin(), keep.end());
    std::sort(out.kept.begin(), out.kept.end());
    out.sub_gb = GroebnerBasis<K>{subring, kept_polys};
    out.ideal = IdealPresentation<K>{};
    out.ideal.ring = subring;
    out.ideal.gens = std::move(kept_polys);
    return out;
}

// ---------------------------------------------------------------------------
// exact division, lcm / gcd via ideal intersection
// ---------------------------------------------------------------------------

// quotient f / g, throws structure_error unless g | f exactly
template <class K>
Poly<K> exact_div(const Poly<K>& f, const Poly<K>& g) {
    f.require_compatible(g);
    if (g.is_zero()) throw input_error("exact_div: division by zero");
    const K& F = f.ring()->field;
    const size_t n = f.nvars();
    Poly<K> rem = f;
    std::vector<std::pair<std::vector<Exp>, typename K::Elt>> qterms;
    std::vector<Exp> quot(n);
    while (!rem.is_zero()) {
        if (!divides(g.lead_exp(), rem.lead_exp()))
            throw structure_error("exact_div: not divisible");
        exp_div(rem.lead_exp(), g.lead_exp(), quot.data());
        auto c = F.div(rem.lead_coeff(), g.lead_coeff());
        qterms.emplace_back(quot, c);
        rem = rem - g.term_multiplied(c, ExpSpan(quot));
    }
    return Poly<K>::from_terms(f.ring(), std::move(qterms));
}

// lcm(f, g) as the generator of <f> ∩ <g>, computed by eliminating an
// auxiliary variable from <w f, (1-w) g>. Exact in any polynomial ring over a
// field; returns the normalized generator in the ring of f.
template <class K>
Poly<K> poly_lcm(const Poly<K>& f, const Poly<K>& g, const Budget& budget = {}) {
    f.require_compatible(g);
    if (f.is_zero() || g.is_zero()) throw input_error("poly_lcm of zero");
    if (f.is_constant()) return normalized_generator(g);
    if (g.is_constant()) return normalized_generator(f);
    const RingPtr<K>& R = f.ring();
    std::vector<std::string> vars = R->vars;
    std::string w = "_w";
    while (R->var_index(w) >= 0) w += "_";
    vars.insert(vars.begin(), w);
    RingPtr<K> Rx = make_ring<K>(R->field, vars, MonomialOrder::Grevlex());
    std::vector<int> up(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) up[v] = static_cast<int>(v + 1);
    Poly<K> fw = map_variables(f, up, Rx);
    Poly<K> gw = map_variables(g, up, Rx);
    Poly<K> wv = Poly<K>::variable(Rx, 0);
    Poly<K> one = Poly<K>::constant(Rx, R->field.one());
    IdealPresentation<K> J(Rx, {wv * fw, (one - wv) * gw});
    std::vector<int> keep(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) keep[v] = static_cast<int>(v + 1);
    auto elim = eliminate(J, keep, budget);
    if (elim.sub_gb.basis.size() != 1)
        throw structure_error("poly_lcm: intersection ideal is not principal");
    // back into the caller's ring
    std::vector<int> back(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) back[v] = static_cast<int>(v);
    return normalized_generator(map_variables(elim.sub_gb.basis[0], back, R));
}

template <class K>
Poly<K> poly_gcd(const Poly<K>& f, const Poly<K>& g, const Budget& budget = {}) {
    return normalized_generator(exact_div(f * g, poly_lcm(f, g, budget)));
}

// ---------------------------------------------------------------------------
// saturation and implicitization
// ---------------------------------------------------------------------------

// (I : f^inf) via the inverse-variable trick.
template <class K>
IdealPresentation<K> saturate(const IdealPresentation<K>& I, const Poly<K>& f,
                              const Budget& budget = {}) {
    const RingPtr<K>& R = I.ring;
    std::vector<std::string> vars = R->vars;
    std::string u = "_u";
    while (R->var_index(u) >= 0) u += "_";
    vars.insert(vars.begin(), u);
    RingPtr<K> Ru = make_ring<K>(R->field, vars, MonomialOrder::Grevlex());
    std::vector<int> up(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) up[v] = static_cast<int>(v + 1);
    std::vector<Poly<K>> gens;
    for (const auto& g : I.gens) gens.push_back(map_variables(g, up, Ru));
    Poly<K> uf = Poly<K>::variable(Ru, 0) * map_variables(f, up, Ru) -
                 Poly<K>::constant(Ru, R->field.one());
    gens.push_back(uf);
    std::vector<int> keep(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) keep[v] = static_cast<int>(v + 1);
    auto elim = eliminate(IdealPresentation<K>(Ru, gens), keep, budget);
    std::vector<int> back(R->nvars());
    for (size_t v = 0; v < R->nvars(); ++v) back[v] = static_cast<int>(v);
    std::vector<Poly<K>> out;
    for (const auto& g : elim.ideal.gens) out.push_back(map_variables(g, back, R));
    IdealPresentation<K> res;
    res.ring = R;
    res.gens = std::move(out);
    return res;
}

// Prime ideal of the closure of the image of a rational parametrization:
// graph ideal <q_j x_j - p_j> plus u * (product of distinct nonconstant
// denominators) - 1, then eliminate parameters and u.
template <class K>
EliminationResult<K> implicitize_elim(const Parametrization<K>& phi,
                                      const Budget& budget = {}) {
    const RingPtr<K>& T = phi.param_ring;
    const size_t d = T->nvars(), n = phi.ncoords();
    std::vector<Poly<K>> dens;
    for (const auto& g : phi.coords) {
        if (g.den.is_constant()) continue;
        bool seen = false;
        for (const auto& h : dens)
            if (h == g.den) {
                seen = true;
                break;
            }
        if (!seen) dens.push_back(g.den);
    }
    const bool need_u = !dens.empty();
    std::vector<std::string> vars = T->vars;
    std::string u = "_u";
    if (need_u) {
        while (T->var_index(u) >= 0) u += "_";
        vars.push_back(u);
    }
    for (const auto& lab : phi.labels) {
        if (std::find(vars.begin(), vars.end(), lab) != vars.end())
            throw input_error("implicitize: coordinate label '" + lab +
                              "' collides with a parameter name");
        vars.push_back(lab);
    }
    RingPtr<K> G = make_ring<K>(T->field, vars, MonomialOrder::Grevlex());
    std::vector<int> tmap(d);
    for (size_t v = 0; v < d; ++v) tmap[v] = static_cast<int>(v);
    const size_t xbase = d + (need_u ? 1 : 0);

    std::vector<Poly<K>> gens;
    for (size_t j = 0; j < n; ++j) {
        Poly<K> xj = Poly<K>::variable(G, static_cast<int>(xbase + j));
        Poly<K> num = map_variables(phi.coords[j].num, tmap, G);
        Poly<K> den = map_variables(phi.coords[j].den, tmap, G);
        gens.push_back(xj * den - num);
    }
    if (need_u) {
        Poly<K> prod = Poly<K>::constant(G, T->field.one());
        for (const auto& h : dens) prod = prod * map_variables(h, tmap, G);
        gens.push_back(Poly<K>::variable(G, static_cast<int>(d)) * prod -
                       Poly<K>::constant(G, T->field.one()));
    }
    std::vector<int> keep;
    for (size_t j = 0; j < n; ++j) keep.push_back(static_cast<int>(xbase + j));
    return eliminate(IdealPresentation<K>(G, gens), keep, budget);
}

template <class K>
IdealPresentation<K> implicitize(const Parametrization<K>& phi,
                                 const Budget& budget = {}) {
    return implicitize_elim(phi, budget).ideal;  // ring on the labels, grevlex
}

// mutual containment of two ideals in the same ring
template <class K>
bool same_ideal(const IdealPresentation<K>& A, const IdealPresentation<K>& B,
                const Budget& budget = {}) {
    auto ga = buchberger(A, MonomialOrder::Grevlex(), budget);
    auto gb = buchberger(B, MonomialOrder::Grevlex(), budget);
    for (const auto& f : A.gens)
        if (!in_ideal(f, gb, budget)) return false;
    for (const auto& f : B.gens)
        if (!in_ideal(f, ga, budget)) return false;
    return true;
}

}  // namespace algmat

#endif  // ALGMAT_GROEBNER_HPP
