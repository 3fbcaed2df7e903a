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

#ifndef ALGMAT_VARIETY_HPP
#define ALGMAT_VARIETY_HPP

#include "ratfun.hpp"

namespace algmat {

// P = <f_1,...,f_m> in k[x_1..x_n]. The variables are the matroid ground set.
// Primality of P is a semantic precondition that is not checked here; the
// matroid-axiom report downstream acts as the sanity signal.
template <class K>
struct IdealPresentation {
    RingPtr<K> ring;
    std::vector<Poly<K>> gens;

    IdealPresentation() = default;
    IdealPresentation(RingPtr<K> r, std::vector<Poly<K>> g)
        : ring(std::move(r)), gens(std::move(g)) {
        for (const auto& f : gens) {
            if (f.is_zero()) throw input_error("ideal generator is zero");
            if (!(f.ring() == ring) && !(*f.ring() == *ring))
                throw ring_mismatch_error("ideal generator in a different ring");
        }
    }

    bool is_zero_ideal() const { return gens.empty(); }
    size_t nvars() const { return ring->nvars(); }
};

// phi = (g_1,...,g_n), rational coordinate functions of the parameters.
// Coordinate labels name the matroid ground set.
template <class K>
struct Parametrization {
    RingPtr<K> param_ring;
    std::vector<RatFun<K>> coords;
    std::vector<std::string> labels;

    Parametrization() = default;
    Parametrization(RingPtr<K> pr, std::vector<RatFun<K>> c,
                    std::vector<std::string> lab = {})
        : param_ring(std::move(pr)), coords(std::move(c)), labels(std::move(lab)) {
        if (labels.empty()) {
            for (size_t i = 0; i < coords.size(); ++i)
                labels.push_back("x" + std::to_string(i + 1));
        }
        if (labels.size() != coords.size())
            throw input_error("parametrization: label/coordinate count mismatch");
        for (const auto& g : coords) {
            if (g.den.is_zero())
                throw input_error("parametrization coordinate with zero denominator");
            if (!(g.ring() == param_ring) && !(*g.ring() == *param_ring))
                throw ring_mismatch_error("coordinate in a different parameter ring");
        }
    }

    size_t nparams() const { return param_ring->nvars(); }
    size_t ncoords() const { return coords.size(); }
};

}  // namespace algmat

#endif  // ALGMAT_VARIETY_HPP
