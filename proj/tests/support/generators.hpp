#pragma once

// Shared random generators and independent oracles for the test suites.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "markbracket/bracket.hpp"
#include "markbracket/diagram.hpp"
#include "markbracket/marked_graph.hpp"
#include "markbracket/moves.hpp"
#include "markbracket/poly.hpp"

namespace testsupport {

using namespace markbracket;

// Naive per-entry Gaussian eliminator over GF(2); the independent oracle for
// the packed implementation.
inline int naive_gf2_rank(std::vector<std::vector<int>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] & 1) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0)
            continue;
        std::swap(m[pivot], m[r]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !(m[i][c] & 1))
                continue;
            for (int j = 0; j < cols; ++j)
                m[i][j] ^= m[r][j];
        }
        ++r;
    }
    return r;
}

inline BracketPoly random_weight(std::mt19937& rng) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return BracketPoly::var_a();
    case 1: return BracketPoly::var_b();
    case 2: return BracketPoly(1);
    case 3: return BracketPoly(2);
    case 4: return BracketPoly::var_d();
    default: return BracketPoly::var_a() + BracketPoly::var_b();
    }
}

inline BracketPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> n_terms(1, 3), expo(0, 2), coeff(-3, 3);
    BracketPoly p;
    const int terms = n_terms(rng);
    for (int k = 0; k < terms; ++k)
        p += BracketPoly::monomial(static_cast<unsigned>(expo(rng)), static_cast<unsigned>(expo(rng)),
                                   static_cast<unsigned>(expo(rng)), coeff(rng));
    return p;
}

inline LaurentA random_laurent(std::mt19937& rng) {
    std::uniform_int_distribution<int> n_terms(1, 3), expo(-4, 4), coeff(-3, 3);
    LaurentA p;
    const int terms = n_terms(rng);
    for (int k = 0; k < terms; ++k)
        p.add_term(expo(rng), coeff(rng));
    return p;
}

inline MarkedGraph random_marked_graph(std::mt19937& rng, int n, int max_free_loops = 2,
                                       bool random_marks = true, bool random_weights = false) {
    std::uniform_int_distribution<int> mark_dist(0, 5), bit(0, 1);
    MarkedGraph g;
    for (int i = 0; i < n; ++i) {
        const Mark m = random_marks ? static_cast<Mark>(mark_dist(rng)) : Mark::Unmarked;
        const int v = g.add_vertex(bit(rng) == 1, m);
        if (random_weights && bit(rng) == 1)
            g.set_weights(v, random_weight(rng), random_weight(rng));
    }
    const std::vector<int> vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (bit(rng) == 1)
                g.set_edge(vs[i], vs[j], true);
    if (max_free_loops > 0)
        g.set_free_loops(std::uniform_int_distribution<int>(0, max_free_loops)(rng));
    return g;
}

inline GaussCode random_gauss_code(std::mt19937& rng, int max_crossings, int max_components) {
    std::uniform_int_distribution<int> bit(0, 1);
    const int n = std::uniform_int_distribution<int>(1, max_crossings)(rng);
    std::vector<std::string> slots;
    for (int i = 1; i <= n; ++i) {
        slots.push_back(std::to_string(i));
        slots.push_back(std::to_string(i));
    }
    std::shuffle(slots.begin(), slots.end(), rng);
    const int comps = std::uniform_int_distribution<int>(1, std::min(max_components, 2 * n))(rng);
    std::vector<int> cuts{0, 2 * n};
    std::set<int> inner;
    while (static_cast<int>(inner.size()) < comps - 1)
        inner.insert(std::uniform_int_distribution<int>(1, 2 * n - 1)(rng));
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    std::sort(cuts.begin(), cuts.end());
    GaussCode code;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        code.components.emplace_back(slots.begin() + cuts[k], slots.begin() + cuts[k + 1]);
    for (int i = 1; i <= n; ++i)
        code.signs[std::to_string(i)] = bit(rng) ? 1 : -1;
    if (bit(rng) == 1)
        code.free_components = 1;
    return code;
}

inline LabeledGraph random_labeled_graph(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> bit(0, 1);
    LabeledGraph g;
    for (int i = 0; i < n; ++i)
        g.add_vertex(bit(rng), bit(rng) ? 1 : -1);
    const std::vector<int> vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (bit(rng) == 1)
                g.set_edge(vs[i], vs[j], true);
    return g;
}

inline EulerSystem random_kappa_walk(const EulerSystem& c, int n_vertices, int steps, std::mt19937& rng) {
    EulerSystem out = c;
    if (n_vertices == 0)
        return out;
    std::uniform_int_distribution<int> pick(0, n_vertices - 1);
    for (int s = 0; s < steps; ++s)
        out = kappa_transform(out, pick(rng));
    return out;
}

// The Euler system whose circuits are the link components themselves; valid
// only when every connected component of the universe carries exactly one
// link component (knot-like codes).
inline EulerSystem link_euler_system(const UniverseGraph& u) {
    std::vector<bool> used(static_cast<std::size_t>(u.half_count()), false);
    EulerSystem out;
    for (int v = 0; v < u.vertex_count(); ++v) {
        for (int slot : {1, 3}) {
            const int start = 4 * v + slot;
            if (used[static_cast<std::size_t>(start)])
                continue;
            std::vector<EulerStep> circuit;
            int depart = start;
            while (true) {
                used[static_cast<std::size_t>(depart)] = true;
                const int arrive = u.edge_partner(depart);
                used[static_cast<std::size_t>(arrive)] = true;
                const int exit = arrive ^ 1;
                circuit.push_back({UniverseGraph::vertex_of_half(arrive), arrive, exit});
                depart = exit;
                if (depart == start)
                    break;
            }
            out.circuits.push_back(std::move(circuit));
        }
    }
    validate_euler_system(u, out);
    return out;
}

// Transition vector (follow masks) identifying an Euler system.
inline std::vector<int> follow_vector(const UniverseGraph& u, const EulerSystem& c) {
    std::vector<int> out;
    for (const TransitionMasks& m : transitions_of(u, c))
        out.push_back(m.follow);
    return out;
}

// All Euler systems reachable from euler_system(u) by kappa-transforms.
inline std::vector<EulerSystem> kappa_orbit(const UniverseGraph& u, std::size_t cap = 100000) {
    std::vector<EulerSystem> orbit;
    std::set<std::vector<int>> seen;
    std::vector<EulerSystem> frontier{euler_system(u)};
    seen.insert(follow_vector(u, frontier.front()));
    while (!frontier.empty() && orbit.size() < cap) {
        EulerSystem current = std::move(frontier.back());
        frontier.pop_back();
        orbit.push_back(current);
        for (int v = 0; v < u.vertex_count(); ++v) {
            EulerSystem next = kappa_transform(orbit.back(), v);
            if (seen.insert(follow_vector(u, next)).second)
                frontier.push_back(std::move(next));
        }
    }
    return orbit;
}

inline MarkedGraph disjoint_union(const MarkedGraph& g, const MarkedGraph& h) {
    MarkedGraph out = g;
    int offset = 0;
    for (int v : g.vertices())
        offset = std::max(offset, v + 1);
    for (int v : h.vertices()) {
        out.add_vertex_with_handle(v + offset, h.loop(v), h.mark(v));
        out.set_weights(v + offset, h.alpha(v), h.beta(v));
    }
    for (const auto& [x, y] : h.edges())
        out.set_edge(x + offset, y + offset, true);
    out.set_free_loops(g.free_loops() + h.free_loops());
    return out;
}

// Relabels vertex handles through a permutation of the existing handles.
inline MarkedGraph relabel(const MarkedGraph& g, const std::map<int, int>& perm) {
    MarkedGraph out;
    for (int v : g.vertices()) {
        const int w = perm.at(v);
        out.add_vertex_with_handle(w, g.loop(v), g.mark(v));
        out.set_weights(w, g.alpha(v), g.beta(v));
    }
    for (const auto& [x, y] : g.edges())
        out.set_edge(perm.at(x), perm.at(y), true);
    out.set_free_loops(g.free_loops());
    return out;
}

} // namespace testsupport
