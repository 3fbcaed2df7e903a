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

#ifndef ALGMAT_JSON_IO_HPP
#define ALGMAT_JSON_IO_HPP

#include <json.hpp>

#include "problem.hpp"

namespace algmat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "algmat/1";

inline Json subset_json(const GroundSet& g, Mask m) {
    Json a = Json::array();
    for (int i : mask_to_indices(m)) a.push_back(g.labels[i]);
    return a;
}

inline Json orbit_classes_json(const GroundSet& g, const std::vector<OrbitClass>& classes) {
    Json out;
    out["count"] = classes.size();
    std::uint64_t total = 0;
    Json arr = Json::array();
    for (const auto& c : classes) {
        Json e;
        e["representative"] = subset_json(g, c.representative);
        e["orbit_size"] = c.size;
        arr.push_back(std::move(e));
        total += c.size;
    }
    out["total"] = total;
    out["classes"] = std::move(arr);
    return out;
}

inline Json matroid_json(const Matroid& m,
                         const std::vector<OrbitClass>* base_classes = nullptr,
                         const std::vector<OrbitClass>* circuit_classes = nullptr,
                         bool include_raw_lists = true) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["ground"] = m.ground.labels;
    j["rank"] = m.rank;
    j["certified"] = m.certified;
    j["base_count"] = m.bases.size();
    if (include_raw_lists) {
        Json bl = Json::array();
        for (Mask b : m.bases) bl.push_back(subset_json(m.ground, b));
        j["bases"] = std::move(bl);
    }
    if (!m.circuits.empty() || include_raw_lists) {
        j["circuit_count"] = m.circuits.size();
        std::map<int, std::uint64_t> sizes;
        for (Mask c : m.circuits) ++sizes[popcount(c)];
        Json hist;
        for (auto& [k, v] : sizes) hist[std::to_string(k)] = v;
        j["circuit_size_histogram"] = std::move(hist);
        if (include_raw_lists) {
            Json cl = Json::array();
            for (Mask c : m.circuits) cl.push_back(subset_json(m.ground, c));
            j["circuits"] = std::move(cl);
        }
    }
    if (base_classes) j["base_classes"] = orbit_classes_json(m.ground, *base_classes);
    if (circuit_classes)
        j["circuit_classes"] = orbit_classes_json(m.ground, *circuit_classes);
    return j;
}

template <class K>
Json decorations_json(const DecoratedMatroid<K>& dm) {
    const GroundSet& g = dm.matroid.ground;
    Json j;
    j["orbit_reduced"] = dm.orbit_reduced;
    {
        Json arr = Json::array();
        for (size_t i = 0; i < dm.circuits.size(); ++i) {
            const auto& dc = dm.circuits[i];
            Json e;
            e["circuit"] = subset_json(g, dc.circuit);
            if (!dc.polynomial.is_zero()) e["polynomial"] = dc.polynomial.to_string();
            e["degree"] = dc.degree;
            e["top_degree"] = dc.top_degree;
            Json sup = Json::array();
            for (const auto& v : dc.support) sup.push_back(v);
            e["support"] = std::move(sup);
            if (dm.orbit_reduced) e["orbit_size"] = dm.circuit_orbit_sizes[i];
            if (!dc.note.empty()) e["note"] = dc.note;
            arr.push_back(std::move(e));
        }
        j["circuits"] = std::move(arr);
    }
    {
        Json h;
        for (auto& [d, c] : dm.circuit_degree_histogram) h[std::to_string(d)] = c;
        j["circuit_degree_histogram"] = std::move(h);
    }
    j["bases_decorated"] = dm.bases_decorated;
    if (dm.bases_decorated) {
        Json arr = Json::array();
        for (size_t i = 0; i < dm.bases.size(); ++i) {
            const auto& db = dm.bases[i];
            Json e;
            e["base"] = subset_json(g, db.base);
            e["base_degree"] = db.base_degree;
            Json lam = Json::array();
            for (const auto& v : db.lambda) lam.push_back(v.get_str());
            e["lambda"] = std::move(lam);
            if (dm.orbit_reduced) e["orbit_size"] = dm.base_orbit_sizes[i];
            arr.push_back(std::move(e));
        }
        j["bases"] = std::move(arr);
        Json h;
        for (auto& [d, c] : dm.base_degree_histogram) h[std::to_string(d)] = c;
        j["base_degree_histogram"] = std::move(h);
    }
    if (!dm.item_errors.empty()) {
        Json errs = Json::array();
        for (const auto& [mask, msg] : dm.item_errors) {
            Json e;
            e["subset"] = subset_json(g, mask);
            e["error"] = msg;
            errs.push_back(std::move(e));
        }
        j["item_errors"] = std::move(errs);
    }
    return j;
}

template <class K>
Json nm_locus_json(const NMLocus<K>& nm) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["ring_vars"] = nm.ring->vars;
    if (nm.unit) {
        j["form"] = "empty";
        j["generator"] = "1";
    } else if (nm.principal) {
        j["form"] = "principal";
        j["generator"] = nm.principal->to_string();
        j["degree"] = nm.principal->degree();
    } else {
        j["form"] = "intersection";
        Json arr = Json::array();
        for (const auto& gens : nm.minor_ideals) {
            Json ideal = Json::array();
            for (const auto& g : gens) ideal.push_back(g.to_string());
            arr.push_back(std::move(ideal));
        }
        j["minor_ideals"] = std::move(arr);
    }
    return j;
}

inline Json axiom_report_json(const AxiomReport& rep) {
    Json j;
    j["pass"] = rep.pass;
    j["exchange_pairs_checked"] = rep.exchange_pairs_checked;
    j["exchange_exhaustive"] = rep.exchange_exhaustive;
    j["elimination_pairs_checked"] = rep.elimination_pairs_checked;
    j["elimination_exhaustive"] = rep.elimination_exhaustive;
    j["failures"] = rep.failures;
    return j;
}

inline Json cross_engine_json(const CrossEngineReport& rep) {
    Json j;
    j["applicable"] = rep.applicable;
    j["pass"] = rep.pass;
    j["probes"] = rep.probes;
    j["mismatches"] = rep.mismatches;
    return j;
}

}  // namespace algmat

#endif  // ALGMAT_JSON_IO_HPP
