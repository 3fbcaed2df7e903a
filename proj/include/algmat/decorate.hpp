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

#ifndef ALGMAT_DECORATE_HPP
#define ALGMAT_DECORATE_HPP

#include <map>

#include "jacobian.hpp"

namespace algmat {

// Circuit decorations: the circuit polynomial theta_C generating the
// principal elimination ideal P ∩ k[C], its degree, the per-variable degree
// vector (top-degree, the outer corner of the Newton polytope's bounding box)
// and the exponent support. Vectors are indexed by the full ground set.
template <class K>
struct DecoratedCircuit {
    Mask circuit = 0;
    Poly<K> polynomial;  // in the subring on the circuit variables, normalized
    long degree = 0;
    std::vector<long> top_degree;            // length n, zero off the circuit
    std::vector<std::vector<Exp>> support;   // exponent vectors, length n each
    std::string note;                        // informational remarks
};

template <class K>
struct DecoratedBase {
    Mask base = 0;
    long base_degree = 0;
    std::vector<typename K::Elt> lambda;  // the random fiber target used
};

namespace detail {

template <class K>
Parametrization<K> sub_parametrization(const Parametrization<K>& phi, Mask coords) {
    std::vector<RatFun<K>> c;
    std::vector<std::string> lab;
    for (int j : mask_to_indices(coords)) {
        c.push_back(phi.coords[j]);
        lab.push_back(phi.labels[j]);
    }
    return Parametrization<K>(phi.param_ring, std::move(c), std::move(lab));
}

// expands subring data (on circuit variables) to full-ground-set vectors
template <class K>
void fill_full_vectors(DecoratedCircuit<K>& dc, size_t n) {
    std::vector<int> idx = mask_to_indices(dc.circuit);
    dc.degree = dc.polynomial.degree();
    dc.top_degree.assign(n, 0);
    std::vector<long> sub = dc.polynomial.per_variable_degrees();
    for (size_t i = 0; i < idx.size(); ++i) dc.top_degree[idx[i]] = sub[i];
    dc.support.clear();
    for (size_t t = 0; t < dc.polynomial.nterms(); ++t) {
        ExpSpan e = dc.polynomial.exp(t);
        std::vector<Exp> full(n, 0);
        for (size_t i = 0; i < idx.size(); ++i) full[idx[i]] = e[i];
        dc.support.push_back(std::move(full));
    }
}

template <class K>
void attach_notes(DecoratedCircuit<K>& dc, unsigned long characteristic) {
    if (popcount(dc.circuit) == 1 && dc.degree > 1 && characteristic == 0) {
        // over an algebraically closed field a loop's polynomial would be
        // linear; over Q higher degree is legitimate, so just remark on it
        dc.note = "loop polynomial of degree > 1 (irreducible over Q, reducible over its closure)";
    }
}

}  // namespace detail

// theta_C from an ideal presentation: eliminate down to k[C], demand a
// principal ideal with full support on C.
template <class K>
DecoratedCircuit<K> circuit_polynomial(const IdealPresentation<K>& P, Mask C,
                                       const Budget& budget = {}) {
    if (C == 0) throw input_error("circuit_polynomial: empty set");
    auto elim = eliminate(P, mask_to_indices(C), budget);
    if (elim.ideal.gens.empty())
        throw structure_error("circuit_polynomial: elimination ideal is zero (set is independent)");
    if (elim.ideal.gens.size() != 1)
        throw structure_error(
            "circuit_polynomial: elimination ideal is not principal (not a circuit, or input not prime)");
    DecoratedCircuit<K> dc;
    dc.circuit = C;
    dc.polynomial = normalized_generator(elim.ideal.gens[0]);
    if (static_cast<int>(dc.polynomial.variables_used().size()) != popcount(C))
        throw structure_error(
            "circuit_polynomial: generator does not have full support on the set");
    detail::fill_full_vectors(dc, P.ring->nvars());
    detail::attach_notes(dc, P.ring->field.characteristic());
    return dc;
}

// theta_C from a parametrization: the implicit ideal of the sub-map on C.
template <class K>
DecoratedCircuit<K> circuit_polynomial(const Parametrization<K>& phi, Mask C,
                                       const Budget& budget = {}) {
    if (C == 0) throw input_error("circuit_polynomial: empty set");
    auto I = implicitize(detail::sub_parametrization(phi, C), budget);
    if (I.gens.empty())
        throw structure_error("circuit_polynomial: elimination ideal is zero (set is independent)");
    if (I.gens.size() != 1)
        throw structure_error("circuit_polynomial: elimination ideal is not principal");
    DecoratedCircuit<K> dc;
    dc.circuit = C;
    dc.polynomial = normalized_generator(I.gens[0]);
    if (static_cast<int>(dc.polynomial.variables_used().size()) != popcount(C))
        throw structure_error(
            "circuit_polynomial: generator does not have full support on the set");
    detail::fill_full_vectors(dc, phi.ncoords());
    detail::attach_notes(dc, phi.param_ring->field.characteristic());
    return dc;
}

// ---------------------------------------------------------------------------
// base degrees (characteristic zero)
// ---------------------------------------------------------------------------

struct BaseDegreeOptions {
    long lambda_window = 97;  // fiber targets are small random integers
    int retries = 32;
    int stability_samples = 2;  // independent lambdas that must agree
};

namespace detail {

// degree of the fiber ideal P + <x_i - lambda_i : i in B>, computed by
// substituting the lambdas and counting standard monomials in k[E \ B]
inline long fiber_degree_ideal(const IdealPresentation<Rationals>& P, Mask B,
                               const std::vector<mpq_class>& lambda,
                               const Budget& budget) {
    const size_t n = P.ring->nvars();
    std::vector<std::optional<mpq_class>> assign(n);
    {
        size_t t = 0;
        for (int i : mask_to_indices(B)) assign[i] = lambda[t++];
    }
    Mask comp = 0;
    for (size_t v = 0; v < n; ++v)
        if (!(B & (Mask(1) << v))) comp |= Mask(1) << v;
    std::vector<int> keep = mask_to_indices(comp);
    std::vector<std::string> subvars;
    for (int v : keep) subvars.push_back(P.ring->vars[v]);
    auto subring = make_ring<Rationals>(P.ring->field, subvars);
    std::vector<int> vmap(n, -1);
    for (size_t i = 0; i < keep.size(); ++i) vmap[keep[i]] = static_cast<int>(i);

    std::vector<Poly<Rationals>> gens;
    for (const auto& f : P.gens) {
        Poly<Rationals> g = f.substituted(assign);
        if (g.is_zero()) continue;
        gens.push_back(map_variables(g, vmap, subring));
    }
    if (gens.empty()) return -1;  // fiber not finite
    IdealPresentation<Rationals> F;
    F.ring = subring;
    F.gens = std::move(gens);
    auto gb = buchberger(F, budget);
    if (gb.is_unit_ideal()) return 0;  // empty fiber: lambda off the image
    if (dimension(gb) != 0) return -1;
    return zero_dim_degree(gb);
}

// fiber of phi over the values (g_i(t) = c_i : i in B) in parameter space
inline long fiber_degree_param(const Parametrization<Rationals>& phi, Mask B,
                               const std::vector<mpq_class>& targets,
                               const Budget& budget) {
    const RingPtr<Rationals>& T = phi.param_ring;
    std::vector<Poly<Rationals>> gens;
    size_t t = 0;
    std::vector<Poly<Rationals>> dens;
    for (int j : mask_to_indices(B)) {
        const RatFun<Rationals>& g = phi.coords[j];
        gens.push_back(g.num - g.den.scaled(targets[t++]));
        if (!g.den.is_constant()) {
            bool seen = false;
            for (const auto& h : dens)
                if (h == g.den) { seen = true; break; }
            if (!seen) dens.push_back(g.den);
        }
    }
    RingPtr<Rationals> ring = T;
    if (!dens.empty()) {
        std::vector<std::string> vars = T->vars;
        std::string u = "_u";
        while (T->var_index(u) >= 0) u += "_";
        vars.push_back(u);
        ring = make_ring<Rationals>(T->field, vars);
        std::vector<int> up(T->nvars());
        for (size_t v = 0; v < T->nvars(); ++v) up[v] = static_cast<int>(v);
        for (auto& g : gens) g = map_variables(g, up, ring);
        Poly<Rationals> prod = Poly<Rationals>::constant(ring, mpq_class(1));
        for (const auto& h : dens) prod = prod * map_variables(h, up, ring);
        gens.push_back(Poly<Rationals>::variable(ring, static_cast<int>(T->nvars())) * prod -
                       Poly<Rationals>::constant(ring, mpq_class(1)));
    }
    std::vector<Poly<Rationals>> nonzero;
    for (auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return -1;
    IdealPresentation<Rationals> F;
    F.ring = ring;
    F.gens = std::move(nonzero);
    auto gb = buchberger(F, budget);
    if (gb.is_unit_ideal()) return 0;
    if (dimension(gb) != 0) return -1;
    return zero_dim_degree(gb);
}

}  // namespace detail

// The degree of the generic fiber of a parametrization over its image
// (needed to convert parameter-space fiber counts into base degrees).
inline long map_degree(const Parametrization<Rationals>& phi, Rng& rng,
                       const BaseDegreeOptions& opt = {}, const Budget& budget = {}) {
    if (phi.nparams() != 0 && phi.ncoords() == 0)
        throw input_error("map_degree: no coordinates");
    Mask all = (Mask(1) << phi.ncoords()) - 1;
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        std::vector<mpq_class> tau;
        for (size_t i = 0; i < phi.nparams(); ++i)
            tau.emplace_back(rng.range(-opt.lambda_window, opt.lambda_window));
        bool ok = true;
        std::vector<mpq_class> targets;
        for (const auto& g : phi.coords) {
            if (g.den.evaluate(tau) == 0) { ok = false; break; }
            targets.push_back(g.evaluate(tau));
        }
        if (!ok) continue;
        long d = detail::fiber_degree_param(phi, all, targets, budget);
        if (d > 0) return d;
    }
    throw verification_error("map_degree: could not find a generic image point");
}

// Base degree over Q: sample a random fiber target, demand a zero-dimensional
// fiber, count its degree, and require a second independent sample to agree.
inline DecoratedBase<Rationals> base_degree(const IdealPresentation<Rationals>& P,
                                            Mask B, Rng& rng,
                                            const BaseDegreeOptions& opt = {},
                                            const Budget& budget = {}) {
    const int k = popcount(B);
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        std::vector<std::vector<mpq_class>> lambdas;
        std::vector<long> degs;
        bool bad = false;
        for (int s = 0; s < opt.stability_samples && !bad; ++s) {
            std::vector<mpq_class> lam;
            for (int i = 0; i < k; ++i)
                lam.emplace_back(rng.range(-opt.lambda_window, opt.lambda_window));
            long d = detail::fiber_degree_ideal(P, B, lam, budget);
            if (d <= 0) { bad = true; break; }  // empty or positive-dimensional
            lambdas.push_back(std::move(lam));
            degs.push_back(d);
        }
        if (bad) continue;
        bool agree = true;
        for (long d : degs) agree &= d == degs[0];
        if (agree) return DecoratedBase<Rationals>{B, degs[0], lambdas[0]};
        // disagreement: an unlucky lambda hit a special fiber; resample
    }
    throw verification_error(
        "base_degree: no stable zero-dimensional fiber found (is the set a basis?)");
}

// Parametrized inputs: only supported when the parameter count equals the
// rank (the parameter-space fiber is then finite and its degree is
// map_degree * base_degree).
inline DecoratedBase<Rationals> base_degree(const Parametrization<Rationals>& phi,
                                            Mask B, long phi_degree, Rng& rng,
                                            const BaseDegreeOptions& opt = {},
                                            const Budget& budget = {}) {
    const int k = popcount(B);
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        std::vector<std::vector<mpq_class>> lambdas;
        std::vector<long> degs;
        bool bad = false;
        for (int s = 0; s < opt.stability_samples && !bad; ++s) {
            std::vector<mpq_class> lam;
            for (int i = 0; i < k; ++i)
                lam.emplace_back(rng.range(-opt.lambda_window, opt.lambda_window));
            long d = detail::fiber_degree_param(phi, B, lam, budget);
            if (d <= 0) { bad = true; break; }
            lambdas.push_back(std::move(lam));
            degs.push_back(d);
        }
        if (bad) continue;
        bool agree = true;
        for (long d : degs) agree &= d == degs[0];
        if (!agree) continue;
        if (degs[0] % phi_degree != 0)
            throw verification_error("base_degree: fiber count not divisible by the map degree");
        return DecoratedBase<Rationals>{B, degs[0] / phi_degree, lambdas[0]};
    }
    throw verification_error(
        "base_degree: no stable zero-dimensional fiber found (is the set a basis?)");
}

// ---------------------------------------------------------------------------
// batch decoration
// ---------------------------------------------------------------------------

struct DecorationOptions {
    bool decorate_circuits = true;
    bool decorate_bases = true;
    bool keep_polynomials = true;  // degree summaries are always computed
    BaseDegreeOptions base_opts;
    std::uint64_t seed = 1;
    int jobs = 0;
};

template <class K>
struct DecoratedMatroid {
    Matroid matroid;
    // one entry per circuit, or per orbit class representative when reduced
    std::vector<DecoratedCircuit<K>> circuits;
    std::vector<DecoratedBase<K>> bases;
    std::vector<std::uint64_t> circuit_orbit_sizes;  // parallel to circuits (1s if not reduced)
    std::vector<std::uint64_t> base_orbit_sizes;
    bool orbit_reduced = false;
    bool bases_decorated = false;  // false in positive characteristic
    std::map<long, std::uint64_t> circuit_degree_histogram;  // weighted by orbit size
    std::map<long, std::uint64_t> base_degree_histogram;
    std::vector<std::pair<Mask, std::string>> item_errors;
};

namespace detail {

template <class Src, class K>
void decorate_circuits_batch(const Src& src, const std::vector<Mask>& items,
                             const std::vector<std::uint64_t>& weights,
                             DecoratedMatroid<K>& out, const DecorationOptions& opt,
                             const Budget& budget) {
    std::vector<DecoratedCircuit<K>> results(items.size());
    std::vector<std::string> errors(items.size());
    parallel_for(items.size(), opt.jobs, [&](std::size_t i) {
        try {
            results[i] = circuit_polynomial(src, items[i], budget);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!errors[i].empty()) {
            out.item_errors.emplace_back(items[i], errors[i]);
            continue;
        }
        out.circuit_degree_histogram[results[i].degree] += weights[i];
        if (!opt.keep_polynomials) results[i].polynomial = Poly<K>(results[i].polynomial.ring());
        out.circuits.push_back(std::move(results[i]));
        out.circuit_orbit_sizes.push_back(weights[i]);
    }
}

}  // namespace detail

// Decorate an enumerated matroid: per-circuit polynomials with summaries and
// per-base degrees (char 0). With a group action, one representative per
// orbit is decorated and histogram counts are propagated by orbit size.
template <class Src, class K>
DecoratedMatroid<K> decorate_impl(const Src& src, const K& field, const Matroid& m,
                                  const DecorationOptions& opt, const Budget& budget,
                                  const GroundSetAction* action) {
    DecoratedMatroid<K> out;
    out.matroid = m;
    std::vector<Mask> circ_items = m.circuits, base_items = m.bases;
    std::vector<std::uint64_t> circ_w(circ_items.size(), 1),
        base_w(base_items.size(), 1);
    if (action && !action->empty()) {
        out.orbit_reduced = true;
        auto cc = orbit_reduce(m.circuits, *action);
        circ_items.clear();
        circ_w.clear();
        for (const auto& c : cc) {
            circ_items.push_back(c.representative);
            circ_w.push_back(c.size);
        }
        auto bc = orbit_reduce(m.bases, *action);
        base_items.clear();
        base_w.clear();
        for (const auto& b : bc) {
            base_items.push_back(b.representative);
            base_w.push_back(b.size);
        }
    }
    if (opt.decorate_circuits)
        detail::decorate_circuits_batch(src, circ_items, circ_w, out, opt, budget);

    if (opt.decorate_bases) {
        if (field.characteristic() != 0) {
            // base degree needs a generic fiber; there is none over GF(q)
            out.bases_decorated = false;
        } else if constexpr (std::is_same_v<K, Rationals>) {
            out.bases_decorated = true;
            std::vector<DecoratedBase<K>> results(base_items.size());
            std::vector<std::string> errors(base_items.size());
            Rng root(opt.seed);
            std::vector<Rng> rngs;
            for (std::size_t i = 0; i < base_items.size(); ++i)
                rngs.push_back(root.fork(i + 1));
            long phi_degree = 0;
            if constexpr (std::is_same_v<Src, Parametrization<Rationals>>) {
                Rng r0 = root.fork(0);
                if (src.nparams() == static_cast<size_t>(m.rank))
                    phi_degree = map_degree(src, r0, opt.base_opts, budget);
            }
            parallel_for(base_items.size(), opt.jobs, [&](std::size_t i) {
                try {
                    if constexpr (std::is_same_v<Src, Parametrization<Rationals>>) {
                        if (src.nparams() != static_cast<size_t>(m.rank))
                            throw input_error(
                                "base degrees need #parameters == rank; supply the ideal form");
                        results[i] = base_degree(src, base_items[i], phi_degree,
                                                 rngs[i], opt.base_opts, budget);
                    } else {
                        results[i] = base_degree(src, base_items[i], rngs[i],
                                                 opt.base_opts, budget);
                    }
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            });
            for (std::size_t i = 0; i < base_items.size(); ++i) {
                if (!errors[i].empty()) {
                    out.item_errors.emplace_back(base_items[i], errors[i]);
                    continue;
                }
                out.base_degree_histogram[results[i].base_degree] += base_w[i];
                out.bases.push_back(std::move(results[i]));
                out.base_orbit_sizes.push_back(base_w[i]);
            }
        }
    }
    return out;
}

template <class K>
DecoratedMatroid<K> decorate(const IdealPresentation<K>& P, const Matroid& m,
                             const DecorationOptions& opt = {}, const Budget& budget = {},
                             const GroundSetAction* action = nullptr) {
    return decorate_impl(P, P.ring->field, m, opt, budget, action);
}

template <class K>
DecoratedMatroid<K> decorate(const Parametrization<K>& phi, const Matroid& m,
                             const DecorationOptions& opt = {}, const Budget& budget = {},
                             const GroundSetAction* action = nullptr) {
    return decorate_impl(phi, phi.param_ring->field, m, opt, budget, action);
}

}  // namespace algmat

#endif  // ALGMAT_DECORATE_HPP
