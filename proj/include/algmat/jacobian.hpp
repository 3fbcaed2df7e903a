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

#ifndef ALGMAT_JACOBIAN_HPP
#define ALGMAT_JACOBIAN_HPP

#include <memory>

#include "groebner.hpp"
#include "linalg.hpp"
#include "matroid.hpp"

namespace algmat {

// Orientation of a Jacobian matrix. Columns are always the ground set.
// The ideal form (d f_i / d x_j) represents the DUAL matroid over the
// function field; the parametrized form (d g_j / d t_i) represents the
// matroid itself (characteristic zero).
enum class JacobianForm { ideal, param };

template <class K>
struct JacobianMatrix {
    JacobianForm form;
    size_t rows = 0, cols = 0;
    std::vector<RatFun<K>> entries;  // row-major
    RingPtr<K> ring;                 // ambient ring (ideal) / parameter ring
    std::vector<std::string> labels;

    const RatFun<K>& at(size_t r, size_t c) const { return entries[r * cols + c]; }
    bool polynomial_entries() const {
        for (const auto& e : entries)
            if (!e.den.is_constant()) return false;
        return true;
    }
};

template <class K>
JacobianMatrix<K> jacobian_of_ideal(const IdealPresentation<K>& P) {
    JacobianMatrix<K> J;
    J.form = JacobianForm::ideal;
    J.rows = P.gens.size();
    J.cols = P.ring->nvars();
    J.ring = P.ring;
    J.labels = P.ring->vars;
    J.entries.reserve(J.rows * J.cols);
    for (const auto& f : P.gens)
        for (size_t v = 0; v < J.cols; ++v)
            J.entries.emplace_back(f.derivative(static_cast<int>(v)));
    return J;
}

template <class K>
JacobianMatrix<K> jacobian_of_param(const Parametrization<K>& phi) {
    JacobianMatrix<K> J;
    J.form = JacobianForm::param;
    J.rows = phi.nparams();  // indices flipped relative to the ideal form
    J.cols = phi.ncoords();
    J.ring = phi.param_ring;
    J.labels = phi.labels;
    J.entries.reserve(J.rows * J.cols);
    for (size_t t = 0; t < J.rows; ++t)
        for (size_t j = 0; j < J.cols; ++j)
            J.entries.push_back(phi.coords[j].derivative(static_cast<int>(t)));
    return J;
}

// ---------------------------------------------------------------------------
// specialization at a point
// ---------------------------------------------------------------------------

template <class K>
std::vector<typename K::Elt> specialize(const JacobianMatrix<K>& J,
                                        const std::vector<typename K::Elt>& point) {
    std::vector<typename K::Elt> M;
    M.reserve(J.entries.size());
    for (const auto& e : J.entries) M.push_back(e.evaluate(point));
    return M;
}

namespace detail {

template <class K>
int rank_of_columns(const K& F, const std::vector<typename K::Elt>& M,
                    size_t rows, size_t cols, Mask colset) {
    std::vector<int> sel = mask_to_indices(colset);
    std::vector<typename K::Elt> sub;
    sub.reserve(rows * sel.size());
    for (size_t r = 0; r < rows; ++r)
        for (int c : sel) sub.push_back(M[r * cols + c]);
    if constexpr (std::is_same_v<K, Rationals>) {
        (void)F;
        return rank_rational(sub, static_cast<int>(rows), static_cast<int>(sel.size()));
    } else {
        return rank_gauss(F, std::move(sub), static_cast<int>(rows),
                          static_cast<int>(sel.size()));
    }
}

}  // namespace detail

// Exact rank of the specialized column submatrix (fraction-free over Q).
template <class K>
int specialized_rank(const JacobianMatrix<K>& J,
                     const std::vector<typename K::Elt>& point, Mask colset) {
    auto M = specialize(J, point);
    return detail::rank_of_columns(J.ring->field, M, J.rows, J.cols, colset);
}

// ---------------------------------------------------------------------------
// symbolic rank over Frac(k[x]/P) via minors with normal-form zero tests
// ---------------------------------------------------------------------------

// Rank of column subsets of a polynomial matrix over the function field of
// P: the largest r such that some r x r minor has nonzero normal form against
// GB(P). Minors are grown greedily by bordering a nonsingular witness, with
// all minor normal forms cached. Intended for small row counts.
template <class K>
class MinorRankOracle {
  public:
    MinorRankOracle(std::vector<Poly<K>> entries, size_t rows, size_t cols,
                    GroebnerBasis<K> gb, Budget budget = {})
        : e_(std::move(entries)), rows_(rows), cols_(cols), gb_(std::move(gb)),
          budget_(budget) {
        if (rows_ > 16)
            throw budget_exceeded("symbolic minor rank: too many rows (use the symbolic engine)");
        ring_ = e_.empty() ? nullptr : e_[0].ring();
    }

    int rank_cols(Mask colset) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = rank_cache_.find(colset);
        if (it != rank_cache_.end()) return it->second;
        int r = compute_rank(colset);
        rank_cache_.emplace(colset, r);
        return r;
    }

  private:
    int compute_rank(Mask colset) {
        Mask rowset = 0;  // witness rows, |rowset| = r
        Mask pivots = 0;  // witness columns
        int r = 0;
        for (int c : mask_to_indices(colset)) {
            if (r >= static_cast<int>(rows_)) break;
            if (r >= 8)
                throw budget_exceeded(
                    "symbolic minor rank beyond supported size (use the symbolic engine)");
            for (size_t row = 0; row < rows_; ++row) {
                if (rowset & (Mask(1) << row)) continue;
                Mask nr = rowset | (Mask(1) << row);
                Mask nc = pivots | (Mask(1) << c);
                if (!minor_nf(nr, nc).is_zero()) {
                    rowset = nr;
                    pivots = nc;
                    ++r;
                    break;
                }
            }
        }
        return r;
    }

    // normal form (mod P) of the determinant of the square submatrix
    const Poly<K>& minor_nf(Mask rowset, Mask colset) {
        std::uint64_t key = (std::uint64_t(rowset) << 32) | colset;
        auto it = minors_.find(key);
        if (it != minors_.end()) return it->second;
        Poly<K> det(ring_);
        std::vector<int> rs = mask_to_indices(rowset);
        std::vector<int> cs = mask_to_indices(colset);
        if (rs.size() == 1) {
            det = e_[rs[0] * cols_ + cs[0]];
        } else {
            // Laplace expansion along the first row, cofactors from the cache
            const K& F = ring_->field;
            bool neg = false;
            for (size_t j = 0; j < cs.size(); ++j) {
                const Poly<K>& a = e_[rs[0] * cols_ + cs[j]];
                if (!a.is_zero()) {
                    Mask subr = rowset & ~(Mask(1) << rs[0]);
                    Mask subc = colset & ~(Mask(1) << cs[j]);
                    const Poly<K>& cof = minor_nf(subr, subc);
                    if (!cof.is_zero()) {
                        Poly<K> term = a * cof;
                        det = neg ? det - term : det + term;
                    }
                }
                neg = !neg;
                (void)F;
            }
        }
        Poly<K> nf = normal_form(det, gb_, budget_);
        auto [pos, _] = minors_.emplace(key, std::move(nf));
        return pos->second;
    }

    std::vector<Poly<K>> e_;
    size_t rows_, cols_;
    GroebnerBasis<K> gb_;
    Budget budget_;
    RingPtr<K> ring_;
    std::mutex mu_;
    std::unordered_map<Mask, int> rank_cache_;
    std::unordered_map<std::uint64_t, Poly<K>> minors_;
};

template <class K>
int symbolic_rank_mod_P(const JacobianMatrix<K>& J, const GroebnerBasis<K>& gbP,
                        Mask colset, const Budget& budget = {}) {
    if (!J.polynomial_entries())
        throw input_error("symbolic_rank_mod_P: entries must be polynomials");
    std::vector<Poly<K>> polys;
    polys.reserve(J.entries.size());
    for (const auto& e : J.entries) polys.push_back(e.as_polynomial());
    MinorRankOracle<K> mr(std::move(polys), J.rows, J.cols, gbP, budget);
    return mr.rank_cols(colset);
}

// ---------------------------------------------------------------------------
// NM locus
// ---------------------------------------------------------------------------

// The locus of specialization points at which the Jacobian stops representing
// the (dual) matroid: an intersection of minor ideals over (co)bases, which
// collapses to a principal lcm of maximal minors in the square-deficient
// ideal case (n-d rows) and the square parametrized case (#params = rank).
template <class K>
struct NMLocus {
    RingPtr<K> ring;                  // ambient ring (ideal) / parameter ring (param)
    std::optional<Poly<K>> principal; // normalized generator when principal
    bool unit = false;                // principal == constant: empty locus
    // intersection form: one minor ideal per (co)basis
    std::vector<std::vector<Poly<K>>> minor_ideals;

    bool is_principal() const { return principal.has_value() || unit; }
};

namespace detail {

// determinant of a square RatFun matrix by fraction arithmetic (small sizes)
template <class K>
RatFun<K> ratfun_det(const std::vector<const RatFun<K>*>& m, size_t d,
                     const RingPtr<K>& ring) {
    if (d == 1) return *m[0];
    RatFun<K> det{Poly<K>(ring)};
    std::vector<const RatFun<K>*> sub((d - 1) * (d - 1));
    bool neg = false;
    for (size_t j = 0; j < d; ++j) {
        if (!m[j]->num.is_zero()) {
            size_t t = 0;
            for (size_t r = 1; r < d; ++r)
                for (size_t c = 0; c < d; ++c)
                    if (c != j) sub[t++] = m[r * d + c];
            RatFun<K> term = (*m[j]) * ratfun_det(sub, d - 1, ring);
            det = neg ? det - term : det + term;
        }
        neg = !neg;
    }
    return det;
}

template <class K>
RatFun<K> submatrix_det(const JacobianMatrix<K>& J, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    std::vector<const RatFun<K>*> m;
    m.reserve(rows.size() * cols.size());
    for (int r : rows)
        for (int c : cols) m.push_back(&J.at(r, c));
    return ratfun_det(m, rows.size(), J.ring);
}

}  // namespace detail

// Ideal form: intersect, over cobases B* (complements of bases of M(P)), the
// ideals of (n-d) x (n-d) minors of the cobasis columns. With exactly n-d
// rows each cobasis contributes one maximal minor and the intersection is
// principal: the lcm of the minors that are nonzero mod P.
template <class K>
NMLocus<K> nm_locus_of_ideal(const JacobianMatrix<K>& J, const GroebnerBasis<K>& gbP,
                             const std::vector<Mask>& bases, const Budget& budget = {}) {
    if (J.form != JacobianForm::ideal)
        throw input_error("nm_locus_of_ideal: ideal-form Jacobian required");
    if (bases.empty()) throw input_error("nm_locus: bases unavailable");
    NMLocus<K> out;
    out.ring = J.ring;
    const Mask full = (Mask(1) << J.cols) - 1;
    const int corank = static_cast<int>(J.cols) - popcount(bases[0]);
    if (corank == 0) {  // free matroid: nothing can degenerate
        out.unit = true;
        return out;
    }

    if (static_cast<int>(J.rows) == corank) {
        std::vector<int> rows(J.rows);
        std::iota(rows.begin(), rows.end(), 0);
        std::optional<Poly<K>> acc;
        for (Mask b : bases) {
            Mask cob = full & ~b;
            Poly<K> minor =
                detail::submatrix_det(J, rows, mask_to_indices(cob)).as_polynomial();
            if (minor.is_zero()) continue;
            if (normal_form(minor, gbP, budget).is_zero()) continue;  // zero mod P
            acc = acc ? poly_lcm(*acc, minor, budget) : normalized_generator(minor);
        }
        if (!acc)
            throw structure_error(
                "nm_locus: every cobasis minor vanishes mod P (wrong dual?)");
        if (acc->is_constant()) {
            out.unit = true;
        } else {
            out.principal = *acc;
        }
        return out;
    }
    // general intersection form: one minor ideal per cobasis
    std::vector<int> all_rows(J.rows);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::vector<Mask> row_sets = detail::combinations(static_cast<int>(J.rows), corank);
    if (bases.size() * row_sets.size() > 200000)
        throw budget_exceeded("nm_locus: intersection form too large");
    for (Mask b : bases) {
        Mask cob = full & ~b;
        std::vector<int> cols = mask_to_indices(cob);
        std::vector<Poly<K>> gens;
        for (Mask rs : row_sets) {
            Poly<K> minor =
                detail::submatrix_det(J, mask_to_indices(rs), cols).as_polynomial();
            if (!minor.is_zero()) gens.push_back(normalized_generator(minor));
        }
        out.minor_ideals.push_back(std::move(gens));
    }
    return out;
}

// Parametrized form: principal when #params equals the rank (square maximal
// minors, one per basis); the generator is the lcm of the nonzero ones.
template <class K>
NMLocus<K> nm_locus_of_param(const JacobianMatrix<K>& J, const std::vector<Mask>& bases,
                             const Budget& budget = {}) {
    if (J.form != JacobianForm::param)
        throw input_error("nm_locus_of_param: param-form Jacobian required");
    if (bases.empty()) throw input_error("nm_locus: bases unavailable");
    NMLocus<K> out;
    out.ring = J.ring;
    const int rho = popcount(bases[0]);
    if (rho == 0) {
        out.unit = true;
        return out;
    }
    std::vector<int> all_rows(J.rows);
    std::iota(all_rows.begin(), all_rows.end(), 0);

    if (static_cast<int>(J.rows) == rho) {
        std::optional<Poly<K>> acc;
        for (Mask b : bases) {
            RatFun<K> det = detail::submatrix_det(J, all_rows, mask_to_indices(b));
            Poly<K> minor = det.num;  // denominators are units off their zero loci
            if (minor.is_zero()) continue;
            acc = acc ? poly_lcm(*acc, minor, budget) : normalized_generator(minor);
        }
        if (!acc)
            throw structure_error("nm_locus: all basis minors vanish identically");
        if (acc->is_constant()) {
            out.unit = true;
        } else {
            out.principal = *acc;
        }
        return out;
    }
    // more parameters than rank: report per-basis rho x rho minor ideals
    std::vector<Mask> row_sets = detail::combinations(static_cast<int>(J.rows), rho);
    if (bases.size() * row_sets.size() > 200000)
        throw budget_exceeded("nm_locus: intersection form too large");
    for (Mask b : bases) {
        std::vector<int> cols = mask_to_indices(b);
        std::vector<Poly<K>> gens;
        for (Mask rs : row_sets) {
            RatFun<K> det = detail::submatrix_det(J, mask_to_indices(rs), cols);
            if (!det.num.is_zero()) gens.push_back(normalized_generator(det.num));
        }
        out.minor_ideals.push_back(std::move(gens));
    }
    return out;
}

// ---------------------------------------------------------------------------
// sampling and linear oracles
// ---------------------------------------------------------------------------

// Random integer parameter point avoiding all coordinate denominators and the
// NM locus (principal generator, or per-basis minor ideals when available).
// Param-form inputs only; ideal-form rank queries go through symbolic minors
// instead of numerical points on the variety.
inline std::vector<mpq_class> sample_valid_point(const Parametrization<Rationals>& phi,
                                                 const NMLocus<Rationals>* nm, Rng& rng,
                                                 long window = 1000000,
                                                 int retries = 64) {
    const size_t d = phi.nparams();
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::vector<mpq_class> pt;
        pt.reserve(d);
        for (size_t i = 0; i < d; ++i)
            pt.emplace_back(rng.range(-window, window));
        bool ok = true;
        for (const auto& g : phi.coords) {
            if (g.den.evaluate(pt) == 0) {
                ok = false;
                break;
            }
        }
        if (ok && nm) {
            if (nm->principal) {
                ok = nm->principal->evaluate(pt) != 0;
            } else if (!nm->unit) {
                for (const auto& gens : nm->minor_ideals) {
                    bool some_nonzero = false;
                    for (const auto& g : gens) {
                        if (g.evaluate(pt) != 0) {
                            some_nonzero = true;
                            break;
                        }
                    }
                    if (!some_nonzero) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (ok) return pt;
    }
    throw verification_error(
        "sample_valid_point: retry limit exceeded (degenerate parametrization or wrong NM ideal)");
}

// Rank oracle from a parametrized Jacobian specialized at a point. Over Q the
// specialized matrix is cleared to integers once; ranks are Bareiss.
inline RankOracle make_param_point_oracle(const JacobianMatrix<Rationals>& J,
                                          const std::vector<mpq_class>& point) {
    auto M = specialize(J, point);
    auto Z = std::make_shared<std::vector<mpz_class>>();
    Z->resize(M.size());
    const size_t rows = J.rows, cols = J.cols;
    for (size_t r = 0; r < rows; ++r) {
        mpz_class l(1);
        for (size_t c = 0; c < cols; ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M[r * cols + c].get_den().get_mpz_t());
        for (size_t c = 0; c < cols; ++c) {
            mpq_class v = M[r * cols + c] * l;
            (*Z)[r * cols + c] = v.get_num();
        }
    }
    return RankOracle(
        static_cast<int>(cols),
        [Z, rows, cols](Mask s) {
            std::vector<int> sel = mask_to_indices(s);
            std::vector<mpz_class> sub;
            sub.reserve(rows * sel.size());
            for (size_t r = 0; r < rows; ++r)
                for (int c : sel) sub.push_back((*Z)[r * cols + c]);
            return rank_bareiss(std::move(sub), static_cast<int>(rows),
                                static_cast<int>(sel.size()));
        },
        true, "linear/param-point");
}

// Same construction over a finite field; the resulting oracle is flagged as
// not matroid-certified (the linear realization needs characteristic zero).
template <class K>
RankOracle make_param_point_oracle_uncertified(const JacobianMatrix<K>& J,
                                               const std::vector<typename K::Elt>& point) {
    auto M = std::make_shared<std::vector<typename K::Elt>>(specialize(J, point));
    const size_t rows = J.rows, cols = J.cols;
    K F = J.ring->field;
    return RankOracle(
        static_cast<int>(cols),
        [M, rows, cols, F](Mask s) {
            return detail::rank_of_columns(F, *M, rows, cols, s);
        },
        false, "linear/param-point-charp");
}

// Ideal-form linear oracle: the column matroid of the Jacobian over
// Frac(k[x]/P) is the dual, so ranks convert through the dual-rank identity
//   rank(S) = |S| + rk_J(E \ S) - rk_J(E).
template <class K>
RankOracle make_ideal_linear_oracle(const IdealPresentation<K>& P,
                                    const GroebnerBasis<K>& gbP,
                                    const Budget& budget = {}) {
    auto J = jacobian_of_ideal(P);
    std::vector<Poly<K>> polys;
    polys.reserve(J.entries.size());
    for (const auto& e : J.entries) polys.push_back(e.as_polynomial());
    auto mr = std::make_shared<MinorRankOracle<K>>(std::move(polys), J.rows, J.cols,
                                                   gbP, budget);
    const int n = static_cast<int>(J.cols);
    const Mask full = (Mask(1) << n) - 1;
    const int rkE = mr->rank_cols(full);
    const bool certified = P.ring->field.characteristic() == 0;
    return RankOracle(
        n,
        [mr, full, rkE](Mask s) {
            return popcount(s) + mr->rank_cols(full & ~s) - rkE;
        },
        certified, "linear/ideal-minors");
}

}  // namespace algmat

#endif  // ALGMAT_JACOBIAN_HPP
