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

#ifndef ALGMAT_ENGINE_HPP
#define ALGMAT_ENGINE_HPP

#include "decorate.hpp"

namespace algmat {

enum class Engine { symbolic, linear, automatic };

inline const char* engine_name(Engine e) {
    switch (e) {
        case Engine::symbolic: return "symbolic";
        case Engine::linear: return "linear";
        case Engine::automatic: return "auto";
    }
    return "?";
}

struct RunConfig {
    Engine engine = Engine::automatic;
    std::uint64_t seed = 1;
    Budget budget;
    int jobs = 0;
    long sample_window = 1000000;  // integer window for Jacobian specialization
    int sample_retries = 64;
    int cross_probes = 50;  // two-sample validation subsets
    long lambda_window = 97;
    int base_retries = 32;
    int max_circuit_size = 0;  // 0 = rank+1
    bool use_action = true;
    bool keep_polynomials = true;
    bool decorate_bases = true;
    bool decorate_circuits = true;
};

// One variety in one concrete field: exactly one of ideal / param is set.
template <class K>
struct TypedProblem {
    std::optional<IdealPresentation<K>> ideal;
    std::optional<Parametrization<K>> param;
    GroundSet ground;
    GroundSetAction action;

    bool is_param() const { return param.has_value(); }
    const K& field() const {
        return is_param() ? param->param_ring->field : ideal->ring->field;
    }
};

// ---------------------------------------------------------------------------
// symbolic rank oracles (Groebner elimination)
// ---------------------------------------------------------------------------

// rank(S) = |S| - ht(P ∩ k[S]) = dim of the elimination ideal inside k[S]
template <class K>
RankOracle make_symbolic_ideal_oracle(const IdealPresentation<K>& P,
                                      const Budget& budget = {}) {
    auto Pp = std::make_shared<IdealPresentation<K>>(P);
    Budget bud = budget;
    return RankOracle(
        static_cast<int>(P.ring->nvars()),
        [Pp, bud](Mask s) {
            if (!s) return 0;
            auto elim = eliminate(*Pp, mask_to_indices(s), bud);
            return dimension(elim.sub_gb);
        },
        true, "symbolic/elimination");
}

// rank(S) for a parametrization: dimension of the implicit ideal of the
// sub-map on S, i.e. one small graph elimination per subset.
template <class K>
RankOracle make_symbolic_param_oracle(const Parametrization<K>& phi,
                                      const Budget& budget = {}) {
    auto pp = std::make_shared<Parametrization<K>>(phi);
    Budget bud = budget;
    return RankOracle(
        static_cast<int>(phi.ncoords()),
        [pp, bud](Mask s) {
            if (!s) return 0;
            auto elim = implicitize_elim(detail::sub_parametrization(*pp, s), bud);
            return dimension(elim.sub_gb);
        },
        true, "symbolic/graph-elimination");
}

// ---------------------------------------------------------------------------
// linear oracle with two-sample validation (parametrizations over Q)
// ---------------------------------------------------------------------------

struct OracleInfo {
    std::string backend;
    std::vector<std::string> sample_point;  // accepted specialization point
    int validation_probes = 0;
    int attempts = 0;
    bool certified = true;
};

namespace detail {

inline Mask random_subset(Rng& rng, int n) {
    int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    Mask s = 0;
    while (popcount(s) < k) s |= Mask(1) << rng.below(static_cast<std::uint64_t>(n));
    return s;
}

}  // namespace detail

// Specialize at a random integer point; guard against an unlucky NM-locus hit
// by cross-checking subset ranks against a second independent point, retrying
// on disagreement.
inline RankOracle make_validated_param_oracle(const Parametrization<Rationals>& phi,
                                              const RunConfig& cfg,
                                              OracleInfo* info = nullptr) {
    Rng rng(cfg.seed);
    const int n = static_cast<int>(phi.ncoords());
    auto J = jacobian_of_param(phi);
    for (int attempt = 0; attempt < cfg.sample_retries; ++attempt) {
        auto pt1 = sample_valid_point(phi, nullptr, rng, cfg.sample_window,
                                      cfg.sample_retries);
        auto pt2 = sample_valid_point(phi, nullptr, rng, cfg.sample_window,
                                      cfg.sample_retries);
        RankOracle o1 = make_param_point_oracle(J, pt1);
        RankOracle o2 = make_param_point_oracle(J, pt2);
        bool agree = o1.full_rank() == o2.full_rank();
        for (int p = 0; agree && p < cfg.cross_probes; ++p) {
            Mask s = detail::random_subset(rng, n);
            agree = o1.rank(s) == o2.rank(s);
        }
        if (agree) {
            if (info) {
                info->backend = "linear/param-point";
                for (const auto& v : pt1) info->sample_point.push_back(v.get_str());
                info->validation_probes = cfg.cross_probes;
                info->attempts = attempt + 1;
                info->certified = true;
            }
            return o1;
        }
        // disagreement: at least one sample sits on the NM locus; resample
    }
    throw verification_error(
        "linear oracle: two-sample validation kept failing; parametrization looks degenerate");
}

// ---------------------------------------------------------------------------
// engine selection
// ---------------------------------------------------------------------------

template <class K>
Engine resolve_engine(const TypedProblem<K>& tp, Engine requested) {
    const bool char_p = tp.field().characteristic() != 0;
    if (requested == Engine::automatic) {
        if (char_p) return Engine::symbolic;
        return tp.is_param() ? Engine::linear : Engine::symbolic;
    }
    if (requested == Engine::linear && char_p)
        throw input_error(
            "the linear engine does not certify matroids in positive characteristic; "
            "use --engine symbolic");
    return requested;
}

template <class K>
RankOracle build_oracle(const TypedProblem<K>& tp, const RunConfig& cfg,
                        OracleInfo* info = nullptr) {
    Engine eng = resolve_engine(tp, cfg.engine);
    if (eng == Engine::symbolic) {
        RankOracle o = tp.is_param()
                           ? make_symbolic_param_oracle(*tp.param, cfg.budget)
                           : make_symbolic_ideal_oracle(*tp.ideal, cfg.budget);
        if (info) {
            info->backend = o.backend();
            info->certified = true;
        }
        return o;
    }
    if (tp.is_param()) {
        if constexpr (std::is_same_v<K, Rationals>) {
            return make_validated_param_oracle(*tp.param, cfg, info);
        } else {
            throw input_error("linear engine on a parametrization requires characteristic 0");
        }
    }
    auto gb = buchberger(*tp.ideal, MonomialOrder::Grevlex(), cfg.budget);
    RankOracle o = make_ideal_linear_oracle(*tp.ideal, gb, cfg.budget);
    if (info) {
        info->backend = o.backend();
        info->certified = o.certified();
    }
    return o;
}

// ---------------------------------------------------------------------------
// full enumeration pipeline
// ---------------------------------------------------------------------------

template <class K>
Matroid compute_matroid(const TypedProblem<K>& tp, RankOracle& oracle,
                        const RunConfig& cfg, bool with_circuits = true) {
    Matroid m;
    m.ground = tp.ground;
    m.rank = oracle.full_rank();
    m.certified = oracle.certified();
    m.bases = enumerate_bases(oracle, cfg.jobs);
    if (with_circuits)
        m.circuits = enumerate_circuits_naive(oracle, cfg.max_circuit_size, cfg.jobs);
    return m;
}

// symbolic vs linear rank agreement on random subsets (char-0 inputs)
struct CrossEngineReport {
    bool applicable = false;
    bool pass = true;
    int probes = 0;
    std::vector<std::string> mismatches;
};

template <class K>
CrossEngineReport cross_engine_check(const TypedProblem<K>& tp, const RunConfig& cfg,
                                     int probes) {
    CrossEngineReport rep;
    if (tp.field().characteristic() != 0) return rep;  // not applicable
    rep.applicable = true;
    rep.probes = probes;
    RunConfig sym = cfg;
    sym.engine = Engine::symbolic;
    RunConfig lin = cfg;
    lin.engine = Engine::linear;
    RankOracle so = build_oracle(tp, sym);
    RankOracle lo = build_oracle(tp, lin);
    Rng rng(cfg.seed + 17);
    const int n = so.nelems();
    for (int p = 0; p < probes; ++p) {
        Mask s = detail::random_subset(rng, n);
        int rs = so.rank(s), rl = lo.rank(s);
        if (rs != rl) {
            rep.pass = false;
            if (rep.mismatches.size() < 8) {
                std::string msg = "subset {";
                bool first = true;
                for (int i : mask_to_indices(s)) {
                    if (!first) msg += ",";
                    first = false;
                    msg += tp.ground.labels[i];
                }
                msg += "}: symbolic " + std::to_string(rs) + " vs linear " +
                       std::to_string(rl);
                rep.mismatches.push_back(msg);
            }
        }
    }
    return rep;
}

// NM locus for either input form, routed per orientation.
template <class K>
NMLocus<K> compute_nm_locus(const TypedProblem<K>& tp, const std::vector<Mask>& bases,
                            const RunConfig& cfg) {
    if (tp.is_param()) {
        auto J = jacobian_of_param(*tp.param);
        return nm_locus_of_param(J, bases, cfg.budget);
    }
    auto gb = buchberger(*tp.ideal, MonomialOrder::Grevlex(), cfg.budget);
    auto J = jacobian_of_ideal(*tp.ideal);
    return nm_locus_of_ideal(J, gb, bases, cfg.budget);
}

template <class K>
DecoratedMatroid<K> compute_decorations(const TypedProblem<K>& tp, const Matroid& m,
                                        const RunConfig& cfg) {
    DecorationOptions opt;
    opt.decorate_circuits = cfg.decorate_circuits;
    opt.decorate_bases = cfg.decorate_bases;
    opt.keep_polynomials = cfg.keep_polynomials;
    opt.base_opts.lambda_window = cfg.lambda_window;
    opt.base_opts.retries = cfg.base_retries;
    opt.seed = cfg.seed;
    opt.jobs = cfg.jobs;
    const GroundSetAction* action =
        (cfg.use_action && !tp.action.empty()) ? &tp.action : nullptr;
    if (tp.is_param())
        return decorate(*tp.param, m, opt, cfg.budget, action);
    return decorate(*tp.ideal, m, opt, cfg.budget, action);
}

}  // namespace algmat

#endif  // ALGMAT_ENGINE_HPP
