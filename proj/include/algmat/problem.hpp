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

#ifndef ALGMAT_PROBLEM_HPP
#define ALGMAT_PROBLEM_HPP

#include <fstream>
#include <sstream>

#include "engine.hpp"
#include "parser.hpp"

namespace algmat {

// Plain-text problem files: a field declaration, ring variables, exactly one
// of an ideal or a parametrization, optionally a group action in cycle
// notation (1-based ground-set indices) and ground-set labels.
//
//   # torus
//   field Q
//   vars x y z
//   ideal:
//   (x^2+y^2+z^2+3)^2-16*(x^2+y^2)
//   end
//
//   field GF(4) gen L mod L^2+L+1
//   params x y z
//   labels t1 t2 t3 t4 t5 t6 t7 t8 t9
//   coords:
//   x^2+y
//   ...
//   end
//   action: (1 2)(3 4), (1 2 3)
struct ProblemText {
    std::string name;
    FieldSpec field;
    bool is_param = false;
    std::vector<std::string> vars;    // ideal form: ring vars = ground set
    std::vector<std::string> gens;    // ideal generators
    std::vector<std::string> params;  // param form
    std::vector<std::string> labels;  // param form ground labels (optional)
    std::vector<std::string> coords;  // coordinate expressions
    std::vector<std::vector<std::vector<int>>> action_cycles;  // per generator
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline FieldSpec parse_field_line(const std::string& rest) {
    auto words = split_ws(rest);
    if (words.empty()) throw parse_error("field: missing field kind");
    std::string kind = words[0];
    for (auto& c : kind) c = static_cast<char>(std::tolower(c));
    if (kind == "q" || kind == "rationals") return FieldSpec::Q();
    if (kind.rfind("gf(", 0) == 0 && kind.back() == ')') {
        std::uint64_t q = std::stoull(kind.substr(3, kind.size() - 4));
        if (q < 2) throw parse_error("field: GF size must be >= 2");
        // factor q = p^k; if no divisor up to sqrt(q), q itself is the prime
        std::uint64_t p = q;
        unsigned k = 1;
        for (std::uint64_t cand = 2; cand * cand <= q; ++cand) {
            if (q % cand == 0) {
                p = cand;
                std::uint64_t m = q;
                k = 0;
                while (m % p == 0) {
                    m /= p;
                    ++k;
                }
                if (m != 1) throw parse_error("field: GF size is not a prime power");
                break;
            }
        }
        if (k == 1) {
            if (words.size() > 1) throw parse_error("field: GF(p) takes no options");
            return FieldSpec::GF(p);
        }
        std::string gen = "L", modtext;
        for (size_t i = 1; i < words.size(); ++i) {
            if (words[i] == "gen" && i + 1 < words.size()) {
                gen = words[++i];
            } else if (words[i] == "mod" && i + 1 < words.size()) {
                modtext = words[++i];
            } else {
                throw parse_error("field: unexpected token '" + words[i] + "'");
            }
        }
        if (modtext.empty())
            throw parse_error("field: GF(p^k) needs an explicit modulus, e.g. mod " +
                              gen + "^2+" + gen + "+1");
        // parse the modulus as a univariate polynomial over GF(p)
        auto R = make_ring(PrimeField(p), {gen}, MonomialOrder::Lex());
        Poly<PrimeField> mp = parse_polynomial<PrimeField>(modtext, R);
        std::vector<std::uint64_t> coeffs(static_cast<size_t>(mp.degree()) + 1, 0);
        for (size_t t = 0; t < mp.nterms(); ++t) coeffs[mp.exp(t)[0]] = mp.coeff(t);
        if (coeffs.size() != k + 1)
            throw parse_error("field: modulus degree must equal the extension degree");
        return FieldSpec::GFext(p, coeffs, gen);
    }
    throw parse_error("field: unknown field '" + words[0] + "'");
}

inline std::vector<std::vector<int>> parse_cycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') throw parse_error("action: expected '('");
        size_t close = text.find(')', i);
        if (close == std::string::npos) throw parse_error("action: missing ')'");
        std::istringstream in(text.substr(i + 1, close - i - 1));
        std::vector<int> cyc;
        int v;
        while (in >> v) {
            if (v < 1) throw parse_error("action: indices are 1-based");
            cyc.push_back(v);
        }
        if (cyc.size() < 2) throw parse_error("action: cycle needs >= 2 entries");
        cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    if (cycles.empty()) throw parse_error("action: empty generator");
    return cycles;
}

}  // namespace detail

inline ProblemText parse_problem_text(const std::string& content,
                                      const std::string& name = "") {
    ProblemText pt;
    pt.name = name;
    std::istringstream in(content);
    std::string line;
    bool have_field = false, have_body = false;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw parse_error(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.rfind("field", 0) == 0) {
            pt.field = detail::parse_field_line(detail::strip(s.substr(5)));
            have_field = true;
        } else if (s.rfind("vars", 0) == 0) {
            pt.vars = detail::split_ws(s.substr(4));
        } else if (s.rfind("params", 0) == 0) {
            pt.params = detail::split_ws(s.substr(6));
            pt.is_param = true;
        } else if (s.rfind("labels", 0) == 0) {
            pt.labels = detail::split_ws(s.substr(6));
        } else if (s == "ideal:" || s == "ideal") {
            if (have_body) fail("only one of ideal/coords allowed");
            have_body = true;
            while (std::getline(in, line)) {
                ++lineno;
                std::string g = detail::strip(line);
                if (g.empty() || g[0] == '#') continue;
                if (g == "end") break;
                pt.gens.push_back(g);
            }
            if (pt.gens.empty()) fail("ideal: no generators");
        } else if (s == "coords:" || s == "coords") {
            if (have_body) fail("only one of ideal/coords allowed");
            have_body = true;
            pt.is_param = true;
            while (std::getline(in, line)) {
                ++lineno;
                std::string g = detail::strip(line);
                if (g.empty() || g[0] == '#') continue;
                if (g == "end") break;
                pt.coords.push_back(g);
            }
            if (pt.coords.empty()) fail("coords: no coordinates");
        } else if (s.rfind("action:", 0) == 0) {
            std::string rest = detail::strip(s.substr(7));
            std::string gen;
            std::istringstream gens_in(rest);
            while (std::getline(gens_in, gen, ',')) {
                gen = detail::strip(gen);
                if (!gen.empty()) pt.action_cycles.push_back(detail::parse_cycles(gen));
            }
        } else {
            fail("unrecognized directive: " + s);
        }
    }
    if (!have_field) throw parse_error(name + ": missing field declaration");
    if (!have_body) throw parse_error(name + ": missing ideal/coords body");
    if (pt.is_param) {
        if (pt.params.empty()) throw parse_error(name + ": parametrization needs 'params'");
        if (!pt.vars.empty()) throw parse_error(name + ": 'vars' is for ideal form");
    } else {
        if (pt.vars.empty()) throw parse_error(name + ": ideal form needs 'vars'");
    }
    return pt;
}

inline ProblemText load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open problem file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string name = path;
    size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    return parse_problem_text(buf.str(), name);
}

namespace detail {

inline GroundSetAction instantiate_action(const ProblemText& pt, int n) {
    std::vector<std::vector<int>> perms;
    for (const auto& cycles : pt.action_cycles) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i;
        std::vector<char> touched(n, 0);
        for (const auto& cyc : cycles) {
            for (size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i] - 1, to = cyc[(i + 1) % cyc.size()] - 1;
                if (from >= n || to >= n)
                    throw parse_error("action: index out of range");
                if (touched[from])
                    throw parse_error("action: cycles within a generator must be disjoint");
                touched[from] = 1;
                img[from] = to;
            }
        }
        perms.push_back(std::move(img));
    }
    return GroundSetAction(std::move(perms), n);
}

}  // namespace detail

// Instantiate the raw text over the concrete field K (call via dispatch_field
// so K matches ProblemText::field).
template <class K>
TypedProblem<K> instantiate(const ProblemText& pt, const K& field) {
    TypedProblem<K> tp;
    if (pt.is_param) {
        auto T = make_ring(field, pt.params, MonomialOrder::Grevlex());
        std::vector<RatFun<K>> coords;
        for (const auto& s : pt.coords)
            coords.push_back(parse_rational<K>(s, T));
        tp.param = Parametrization<K>(T, std::move(coords), pt.labels);
        tp.ground = GroundSet(tp.param->labels);
    } else {
        auto R = make_ring(field, pt.vars, MonomialOrder::Grevlex());
        std::vector<Poly<K>> gens;
        for (const auto& s : pt.gens) {
            Poly<K> g = parse_polynomial<K>(s, R);
            if (g.is_zero()) throw input_error("ideal generator parses to zero: " + s);
            gens.push_back(std::move(g));
        }
        tp.ideal = IdealPresentation<K>(R, std::move(gens));
        tp.ground = GroundSet(pt.vars);
    }
    tp.action = detail::instantiate_action(pt, tp.ground.n());
    return tp;
}

}  // namespace algmat

#endif  // ALGMAT_PROBLEM_HPP
