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

#ifndef ALGMAT_MATROID_HPP
#define ALGMAT_MATROID_HPP

#include <bit>
#include <functional>
#include <mutex>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "common.hpp"
#include "parallel.hpp"

namespace algmat {

// Ground sets are at most 31 elements (the fixtures top out at 24); subsets
// are bitmasks with canonical text form = sorted index list.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_to_indices(Mask m) {
    std::vector<int> v;
    while (m) {
        int b = std::countr_zero(m);
        v.push_back(b);
        m &= m - 1;
    }
    return v;
}

inline Mask indices_to_mask(const std::vector<int>& v) {
    Mask m = 0;
    for (int i : v) m |= Mask(1) << i;
    return m;
}

// lexicographic comparison of subsets as sorted index lists (e.g. {0,5} < {1,2})
inline bool subset_lex_less(Mask a, Mask b) {
    while (a && b) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

struct GroundSet {
    std::vector<std::string> labels;

    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> l) : labels(std::move(l)) {
        if (labels.size() > 31) throw input_error("ground set larger than 31 elements");
        for (size_t i = 0; i < labels.size(); ++i)
            for (size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j])
                    throw input_error("duplicate ground element: " + labels[i]);
    }
    int n() const { return static_cast<int>(labels.size()); }
    Mask full() const { return (Mask(1) << labels.size()) - 1; }
    int index_of(const std::string& name) const {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == name) return static_cast<int>(i);
        throw input_error("unknown ground element: " + name);
    }
    std::vector<std::string> names(Mask m) const {
        std::vector<std::string> v;
        for (int i : mask_to_indices(m)) v.push_back(labels[i]);
        return v;
    }
};

// Memoizing rank oracle. The evaluator must be safe to call concurrently;
// distinct subsets may be ranked from multiple threads.
class RankOracle {
  public:
    RankOracle(int n, std::function<int(Mask)> eval, bool certified = true,
               std::string backend = "")
        : n_(n), eval_(std::move(eval)), certified_(certified),
          backend_(std::move(backend)), shards_(new Shard[16]) {}

    int nelems() const { return n_; }
    Mask full_mask() const { return (Mask(1) << n_) - 1; }
    bool certified() const { return certified_; }
    const std::string& backend() const { return backend_; }

    int rank(Mask s) {
        if (s == 0) return 0;
        Shard& sh = shard(s);
        {
            std::lock_guard<std::mutex> lk(sh.mu);
            auto it = sh.memo.find(s);
            if (it != sh.memo.end()) return it->second;
        }
        int r = eval_(s);
        if (r < 0 || r > popcount(s))
            throw verification_error("rank oracle out of range on subset");
        std::lock_guard<std::mutex> lk(sh.mu);
        sh.memo.emplace(s, r);
        return r;
    }

    bool independent(Mask s) { return rank(s) == popcount(s); }
    bool dependent(Mask s) { return !independent(s); }
    int full_rank() { return rank(full_mask()); }

    std::size_t memo_size() const {
        std::size_t t = 0;
        for (int i = 0; i < 16; ++i) t += shards_[i].memo.size();
        return t;
    }

  private:
    struct Shard {
        std::mutex mu;
        std::unordered_map<Mask, int> memo;
    };
    Shard& shard(Mask s) { return shards_[(s * 0x9e3779b9u) >> 28]; }

    int n_;
    std::function<int(Mask)> eval_;
    bool certified_;
    std::string backend_;
    std::unique_ptr<Shard[]> shards_;
};

struct Matroid {
    GroundSet ground;
    int rank = 0;
    std::vector<Mask> bases;     // sorted by subset_lex_less
    std::vector<Mask> circuits;  // sorted by (size, subset_lex_less)
    bool certified = true;
};

inline void sort_subsets(std::vector<Mask>& v) {
    std::sort(v.begin(), v.end(), subset_lex_less);
}
inline void sort_subsets_by_size(std::vector<Mask>& v) {
    std::sort(v.begin(), v.end(), [](Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        if (pa != pb) return pa < pb;
        return subset_lex_less(a, b);
    });
}

namespace detail {

// all k-subsets of [0,n), ascending in subset-lex order
inline std::vector<Mask> combinations(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    if (k == 0) return {Mask(0)};
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        Mask m = 0;
        for (int i : idx) m |= Mask(1) << i;
        out.push_back(m);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

}  // namespace detail

// All subsets S with |S| = rank(E) and rank(S) = |S|, by exhaustive scan of
// the rank-sized subsets.
inline std::vector<Mask> enumerate_bases(RankOracle& oracle, int jobs = 0) {
    const int n = oracle.nelems();
    const int rho = oracle.full_rank();
    std::vector<Mask> cand = detail::combinations(n, rho);
    std::vector<char> is_basis(cand.size(), 0);
    parallel_for(cand.size(), jobs, [&](std::size_t i) {
        if (oracle.rank(cand[i]) == rho) is_basis[i] = 1;
    });
    std::vector<Mask> bases;
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (is_basis[i]) bases.push_back(cand[i]);
    return bases;  // combinations() order is already subset-lex ascending
}

// All circuits of size <= max_size (0 means rank+1, which covers every
// circuit), by a level-wise upward scan that prunes supersets of dependent
// sets: a candidate is ranked only when all its (k-1)-subsets are independent.
inline std::vector<Mask> enumerate_circuits_naive(RankOracle& oracle,
                                                  int max_size = 0, int jobs = 0) {
    const int n = oracle.nelems();
    const int rho = oracle.full_rank();
    int limit = max_size > 0 ? std::min(max_size, n) : rho + 1;
    // every circuit has size <= rank+1
    limit = std::min(limit, rho + 1);

    std::vector<Mask> circuits;
    std::unordered_set<Mask> indep_prev;
    indep_prev.insert(0);
    for (int k = 1; k <= limit; ++k) {
        std::vector<Mask> cand = detail::combinations(n, k);
        // 0 = pruned, 1 = independent, 2 = circuit
        std::vector<char> verdict(cand.size(), 0);
        parallel_for(cand.size(), jobs, [&](std::size_t i) {
            Mask s = cand[i];
            for (Mask t = s; t;) {
                Mask bit = t & (~t + 1);
                t &= t - 1;
                if (!indep_prev.count(s ^ bit)) return;  // pruned
            }
            if (k > rho) {
                verdict[i] = 2;  // all proper subsets independent, size > rank
                return;
            }
            verdict[i] = oracle.rank(s) == k ? 1 : 2;
        });
        std::unordered_set<Mask> indep_next;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (verdict[i] == 1)
                indep_next.insert(cand[i]);
            else if (verdict[i] == 2)
                circuits.push_back(cand[i]);
        }
        indep_prev = std::move(indep_next);
        if (indep_prev.empty() && k <= rho) break;  // nothing left to extend
    }
    sort_subsets_by_size(circuits);
    return circuits;
}

// Greedy minimal dependent subset: scan in label order and drop any element
// whose removal keeps the set dependent. One pass suffices for matroid
// oracles (subsets of independent sets stay independent). `keep` elements are
// never dropped.
inline Mask minimal_dependent_subset(RankOracle& oracle, Mask s, Mask keep = 0) {
    if (!oracle.dependent(s))
        throw verification_error("minimal_dependent_subset: set is independent");
    for (int v : mask_to_indices(s)) {
        Mask bit = Mask(1) << v;
        if (keep & bit) continue;
        Mask t = s ^ bit;
        if (t && oracle.dependent(t)) s = t;
    }
    return s;
}

// The unique circuit inside B ∪ {e} for a basis B and e outside B.
inline Mask fundamental_circuit(RankOracle& oracle, Mask basis, int e) {
    Mask s = basis | (Mask(1) << e);
    return minimal_dependent_subset(oracle, s);
}

struct ExchangeEnumeration {
    std::vector<Mask> circuits;
    bool complete_certificate = false;  // verified by a bounded upward rescan
    std::uint64_t closure_rounds = 0;
};

// Circuit enumeration seeded by the fundamental circuits of one basis and
// closed under pairwise circuit elimination; completeness is then certified
// by re-running the bounded naive scan up to the largest circuit size found.
inline ExchangeEnumeration circuits_by_exchange(RankOracle& oracle, Mask basis,
                                                int jobs = 0,
                                                bool certify = true) {
    const int n = oracle.nelems();
    const int rho = oracle.full_rank();
    if (popcount(basis) != rho || oracle.rank(basis) != rho)
        throw input_error("circuits_by_exchange: seed is not a basis");

    std::unordered_set<Mask> found;
    std::vector<Mask> work;
    for (int e = 0; e < n; ++e) {
        if (basis & (Mask(1) << e)) continue;
        Mask c = fundamental_circuit(oracle, basis, e);
        if (found.insert(c).second) work.push_back(c);
    }
    ExchangeEnumeration out;
    // close under pairwise elimination: for circuits C1 != C2 and a common
    // element e, (C1 ∪ C2) \ {e} contains a circuit; extract one minimal
    // dependent subset per protected element to sweep the union
    std::vector<Mask> all(work.begin(), work.end());
    std::size_t processed = 0;
    while (processed < all.size()) {
        Mask c1 = all[processed++];
        ++out.closure_rounds;
        for (std::size_t j = 0; j < all.size(); ++j) {
            Mask c2 = all[j];
            if (c1 == c2) continue;
            Mask common = c1 & c2;
            if (!common) continue;
            for (int e : mask_to_indices(common)) {
                Mask u = (c1 | c2) & ~(Mask(1) << e);
                if (!oracle.dependent(u)) continue;
                for (int x : mask_to_indices(u)) {
                    Mask c = minimal_dependent_subset(oracle, u, Mask(1) << x);
                    if (found.insert(c).second) all.push_back(c);
                }
            }
        }
    }
    out.circuits.assign(found.begin(), found.end());
    sort_subsets_by_size(out.circuits);
    if (certify) {
        int max_size = 0;
        for (Mask c : out.circuits) max_size = std::max(max_size, popcount(c));
        std::vector<Mask> naive =
            enumerate_circuits_naive(oracle, std::max(max_size, rho + 1), jobs);
        out.complete_certificate = naive == out.circuits;
        if (!out.complete_certificate) out.circuits = std::move(naive);
    }
    return out;
}

// ---------------------------------------------------------------------------
// group actions on the ground set
// ---------------------------------------------------------------------------

struct GroundSetAction {
    std::vector<std::vector<int>> perms;  // generator images, each of length n

    GroundSetAction() = default;
    GroundSetAction(std::vector<std::vector<int>> gens, int n) : perms(std::move(gens)) {
        for (const auto& p : perms) {
            if (static_cast<int>(p.size()) != n)
                throw input_error("action: permutation length mismatch");
            std::vector<char> seen(n, 0);
            for (int v : p) {
                if (v < 0 || v >= n || seen[v])
                    throw input_error("action: generator is not a permutation");
                seen[v] = 1;
            }
        }
    }
    bool empty() const { return perms.empty(); }
};

inline Mask apply_perm(const std::vector<int>& perm, Mask s) {
    Mask out = 0;
    for (int v : mask_to_indices(s)) out |= Mask(1) << perm[v];
    return out;
}

// full orbit of one subset under the generated group (BFS over generators)
inline std::vector<Mask> orbit_of(Mask s, const GroundSetAction& action) {
    std::unordered_set<Mask> seen{s};
    std::vector<Mask> work{s}, out{s};
    while (!work.empty()) {
        Mask cur = work.back();
        work.pop_back();
        for (const auto& p : action.perms) {
            Mask img = apply_perm(p, cur);
            if (seen.insert(img).second) {
                work.push_back(img);
                out.push_back(img);
            }
        }
    }
    return out;
}

struct OrbitClass {
    Mask representative;  // lexicographically least subset of the orbit
    std::uint64_t size;
};

// Partition a subset family into orbits. Throws if the action does not map
// the family into itself (the action must stabilize the enumerated matroid).
inline std::vector<OrbitClass> orbit_reduce(const std::vector<Mask>& family,
                                            const GroundSetAction& action) {
    std::unordered_set<Mask> members(family.begin(), family.end());
    std::unordered_set<Mask> seen;
    std::vector<OrbitClass> classes;
    for (Mask s : family) {
        if (seen.count(s)) continue;
        std::vector<Mask> orb = orbit_of(s, action);
        Mask rep = s;
        for (Mask t : orb) {
            if (!members.count(t))
                throw verification_error(
                    "group action does not stabilize the given family");
            seen.insert(t);
            if (subset_lex_less(t, rep)) rep = t;
        }
        classes.push_back(OrbitClass{rep, orb.size()});
    }
    std::sort(classes.begin(), classes.end(), [](const OrbitClass& a, const OrbitClass& b) {
        int pa = popcount(a.representative), pb = popcount(b.representative);
        if (pa != pb) return pa < pb;
        return subset_lex_less(a.representative, b.representative);
    });
    return classes;
}

// ---------------------------------------------------------------------------
// duality, derived ranks, axiom verification
// ---------------------------------------------------------------------------

inline Matroid dualize(const Matroid& m) {
    if (m.bases.empty()) throw input_error("dualize: bases not enumerated");
    Matroid d;
    d.ground = m.ground;
    d.certified = m.certified;
    Mask full = m.ground.full();
    d.rank = m.ground.n() - m.rank;
    d.bases.reserve(m.bases.size());
    for (Mask b : m.bases) d.bases.push_back(full & ~b);
    sort_subsets(d.bases);
    return d;
}

// rank function recovered from an enumerated basis list
inline int rank_from_bases(const std::vector<Mask>& bases, Mask s) {
    int best = 0;
    for (Mask b : bases) best = std::max(best, popcount(b & s));
    return best;
}

struct AxiomReport {
    bool pass = true;
    std::uint64_t exchange_pairs_checked = 0;
    std::uint64_t elimination_pairs_checked = 0;
    bool exchange_exhaustive = true;
    bool elimination_exhaustive = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        pass = false;
        if (failures.size() < 32) failures.push_back(std::move(msg));
    }
};

// Equicardinality + basis exchange + circuit minimality/elimination. Pair
// checks are exhaustive up to `pair_budget` pairs and seeded-random beyond
// that (the square of the Gr(3,6) basis count is out of reach).
inline AxiomReport verify_axioms(const Matroid& m, std::uint64_t pair_budget = 2'000'000,
                                 std::uint64_t seed = 1) {
    AxiomReport rep;
    auto name = [&](Mask s) {
        std::string t = "{";
        bool first = true;
        for (int i : mask_to_indices(s)) {
            if (!first) t += ",";
            first = false;
            t += m.ground.labels[i];
        }
        return t + "}";
    };

    if (m.bases.empty()) {
        rep.fail("no bases enumerated");
        return rep;
    }
    for (Mask b : m.bases) {
        if (popcount(b) != m.rank) {
            rep.fail("basis " + name(b) + " has wrong cardinality");
            break;
        }
    }

    std::unordered_set<Mask> basis_set(m.bases.begin(), m.bases.end());
    const std::uint64_t nb = m.bases.size();
    Rng rng(seed);
    auto check_exchange = [&](Mask a, Mask b) {
        if (a == b) return;
        for (int x : mask_to_indices(a & ~b)) {
            bool ok = false;
            for (int y : mask_to_indices(b & ~a)) {
                Mask cand = (a ^ (Mask(1) << x)) | (Mask(1) << y);
                if (basis_set.count(cand)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                rep.fail("exchange fails for bases " + name(a) + ", " + name(b) +
                         " at " + m.ground.labels[x]);
                return;
            }
        }
    };
    if (nb * nb <= pair_budget) {
        for (std::uint64_t i = 0; i < nb && rep.pass; ++i)
            for (std::uint64_t j = 0; j < nb; ++j) {
                check_exchange(m.bases[i], m.bases[j]);
                ++rep.exchange_pairs_checked;
                if (!rep.pass) break;
            }
    } else {
        rep.exchange_exhaustive = false;
        for (std::uint64_t t = 0; t < pair_budget && rep.pass; ++t) {
            check_exchange(m.bases[rng.below(nb)], m.bases[rng.below(nb)]);
            ++rep.exchange_pairs_checked;
        }
    }

    if (!m.circuits.empty()) {
        const std::uint64_t nc = m.circuits.size();
        // minimality: no circuit strictly contains another
        auto minimal_pair = [&](Mask c1, Mask c2) {
            if (c1 != c2 && (c1 & c2) == c1)
                rep.fail("circuit " + name(c2) + " contains circuit " + name(c1));
        };
        // elimination: common element => union minus it contains a circuit
        auto elim_pair = [&](Mask c1, Mask c2) {
            if (c1 == c2) return;
            Mask common = c1 & c2;
            if (!common) return;
            int e = std::countr_zero(common);
            Mask u = (c1 | c2) & ~(Mask(1) << e);
            for (Mask c : m.circuits)
                if ((c & u) == c) return;
            rep.fail("circuit elimination fails for " + name(c1) + ", " + name(c2));
        };
        if (nc * nc <= pair_budget) {
            for (std::uint64_t i = 0; i < nc && rep.pass; ++i)
                for (std::uint64_t j = 0; j < nc; ++j) {
                    minimal_pair(m.circuits[i], m.circuits[j]);
                    elim_pair(m.circuits[i], m.circuits[j]);
                    ++rep.elimination_pairs_checked;
                    if (!rep.pass) break;
                }
        } else {
            rep.elimination_exhaustive = false;
            for (std::uint64_t t = 0; t < pair_budget / 64 && rep.pass; ++t) {
                Mask c1 = m.circuits[rng.below(nc)], c2 = m.circuits[rng.below(nc)];
                minimal_pair(c1, c2);
                elim_pair(c1, c2);
                ++rep.elimination_pairs_checked;
            }
        }
        // bases vs circuits: a rank-sized set is a basis iff it contains no circuit
        std::uint64_t probes = std::min<std::uint64_t>(2000, pair_budget);
        for (std::uint64_t t = 0; t < probes && rep.pass; ++t) {
            Mask s = 0;
            while (popcount(s) < m.rank)
                s |= Mask(1) << rng.below(static_cast<std::uint64_t>(m.ground.n()));
            bool has_circuit = false;
            for (Mask c : m.circuits)
                if ((c & s) == c) {
                    has_circuit = true;
                    break;
                }
            if (basis_set.count(s) == has_circuit)
                rep.fail("bases/circuits disagree on " + name(s));
        }
    }
    return rep;
}

}  // namespace algmat

#endif  // ALGMAT_MATROID_HPP
