#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markbracket/bracket.hpp"
#include "markbracket/errors.hpp"
#include "markbracket/gf2.hpp"
#include "markbracket/marked_graph.hpp"
#include "markbracket/poly.hpp"

namespace markbracket {

// Oriented multi-component diagram given as a Gauss code: every crossing label
// occurs exactly twice across all components, each crossing carries a sign,
// and crossing-free components are recorded as a count.
struct GaussCode {
    std::vector<std::vector<std::string>> components;
    std::map<std::string, int> signs; // +1 / -1
    int free_components = 0;
    bool operator==(const GaussCode&) const = default;
};

// Format: components separated by '/', each a whitespace-separated sequence of
// crossing labels; crossing-free components as 'O'; then 'signs <label><+|->...'.
// '#' starts a comment.
inline GaussCode parse_gauss_code(std::string_view text) {
    struct Token {
        std::string value;
        int line;
        int col;
    };
    std::vector<Token> tokens;
    {
        int line = 1, col = 1;
        std::string current;
        int tok_line = 1, tok_col = 1;
        bool in_comment = false;
        auto flush = [&] {
            if (!current.empty()) {
                tokens.push_back({current, tok_line, tok_col});
                current.clear();
            }
        };
        for (char ch : text) {
            if (ch == '\n') {
                flush();
                in_comment = false;
                ++line;
                col = 1;
                continue;
            }
            if (in_comment) {
                ++col;
                continue;
            }
            if (ch == '#') {
                flush();
                in_comment = true;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                flush();
            } else {
                if (current.empty()) {
                    tok_line = line;
                    tok_col = col;
                }
                current += ch;
            }
            ++col;
        }
        flush();
    }

    GaussCode code;
    std::size_t i = 0;
    std::vector<std::string> component;
    bool saw_any_component_token = false;
    auto close_component = [&](int line, int col) {
        if (component.empty()) {
            if (saw_any_component_token)
                throw ParseError(line, col, "empty component");
            return;
        }
        code.components.push_back(component);
        component.clear();
    };
    for (; i < tokens.size() && tokens[i].value != "signs"; ++i) {
        const Token& t = tokens[i];
        if (t.value == "/") {
            close_component(t.line, t.col);
            saw_any_component_token = true;
        } else if (t.value == "O") {
            if (!component.empty())
                throw ParseError(t.line, t.col, "'O' cannot appear inside a component");
            ++code.free_components;
            // An 'O' stands for a whole crossing-free component; swallow an
            // optional following '/'.
            if (i + 1 < tokens.size() && tokens[i + 1].value == "/")
                ++i;
            saw_any_component_token = true;
        } else {
            component.push_back(t.value);
            saw_any_component_token = true;
        }
    }
    close_component(tokens.empty() ? 1 : tokens.back().line, tokens.empty() ? 1 : tokens.back().col);
    if (i < tokens.size()) {
        ++i; // skip 'signs'
        for (; i < tokens.size(); ++i) {
            const Token& t = tokens[i];
            if (t.value.size() < 2 || (t.value.back() != '+' && t.value.back() != '-'))
                throw ParseError(t.line, t.col, "expected <label><+|->");
            const std::string label = t.value.substr(0, t.value.size() - 1);
            if (code.signs.count(label))
                throw ParseError(t.line, t.col, "duplicate sign for crossing " + label);
            code.signs[label] = t.value.back() == '+' ? 1 : -1;
        }
    }

    std::map<std::string, int> occurrences;
    for (const auto& comp : code.components)
        for (const auto& label : comp)
            ++occurrences[label];
    for (const auto& [label, count] : occurrences) {
        if (count != 2)
            throw ParseError(1, 1, "crossing " + label + " occurs " + std::to_string(count) + " times (must be 2)");
        if (!code.signs.count(label))
            throw ParseError(1, 1, "missing sign for crossing " + label);
    }
    for (const auto& [label, sign] : code.signs)
        if (!occurrences.count(label))
            throw ParseError(1, 1, "sign given for unknown crossing " + label);
    return code;
}

inline std::string print_gauss_code(const GaussCode& code) {
    std::string out;
    bool first = true;
    for (const auto& comp : code.components) {
        if (!first)
            out += " / ";
        first = false;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            if (k)
                out += " ";
            out += comp[k];
        }
    }
    for (int k = 0; k < code.free_components; ++k) {
        if (!first)
            out += " / ";
        first = false;
        out += "O";
    }
    if (!code.signs.empty()) {
        out += " signs";
        for (const auto& [label, sign] : code.signs)
            out += " " + label + (sign > 0 ? "+" : "-");
    }
    return out;
}

// 4-regular universe graph with explicit half-edges. Crossing i owns the four
// half-edge slots 4i..4i+3: slots 0/1 are the link-in/link-out of its first
// visit and slots 2/3 of its second visit, so the link transition pairs
// {0,1} with {2,3} and the oriented (non-crossing) smoothing pairs {0,3} with
// {1,2}. A transition is encoded by the XOR mask m in {1,2,3} pairing local
// slot s with s^m.
class UniverseGraph {
public:
    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    int sign(int v) const { return signs_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int free_loops() const { return free_loops_; }

    int half_count() const { return 4 * vertex_count(); }
    static int vertex_of_half(int h) { return h / 4; }
    static int slot_of_half(int h) { return h % 4; }
    int edge_partner(int h) const { return partner_.at(static_cast<std::size_t>(h)); }

    static constexpr int link_mask = 1;     // follow the strand through the crossing
    static constexpr int oriented_mask = 3; // non-crossing smoothing consistent with the link

    bool operator==(const UniverseGraph&) const = default;

    friend UniverseGraph build_universe(const GaussCode& code);

private:
    std::vector<std::string> names_;
    std::vector<int> signs_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> partner_;
    int free_loops_ = 0;
};

inline UniverseGraph build_universe(const GaussCode& code) {
    std::map<std::string, int> occurrences;
    for (const auto& comp : code.components) {
        if (comp.empty())
            throw PreconditionError("empty component in Gauss code");
        for (const auto& label : comp)
            ++occurrences[label];
    }
    for (const auto& [label, count] : occurrences)
        if (count != 2)
            throw PreconditionError("crossing " + label + " occurs " + std::to_string(count) + " times (must be 2)");

    UniverseGraph u;
    for (const auto& [label, count] : occurrences) {
        u.names_.push_back(label);
        auto it = code.signs.find(label);
        if (it == code.signs.end())
            throw PreconditionError("missing sign for crossing " + label);
        u.signs_.push_back(it->second);
    }
    std::map<std::string, int> index;
    for (int v = 0; v < u.vertex_count(); ++v)
        index[u.names_[static_cast<std::size_t>(v)]] = v;

    std::map<std::string, int> seen;
    u.partner_.assign(static_cast<std::size_t>(4 * u.vertex_count()), -1);
    for (const auto& comp : code.components) {
        // in/out half-edges per visit along the component
        std::vector<std::pair<int, int>> visits;
        for (const auto& label : comp) {
            const int v = index[label];
            const int visit = seen[label]++;
            visits.emplace_back(4 * v + 2 * visit, 4 * v + 2 * visit + 1);
        }
        for (std::size_t k = 0; k < visits.size(); ++k) {
            const int out_half = visits[k].second;
            const int in_half = visits[(k + 1) % visits.size()].first;
            u.edges_.emplace_back(out_half, in_half);
            u.partner_[static_cast<std::size_t>(out_half)] = in_half;
            u.partner_[static_cast<std::size_t>(in_half)] = out_half;
        }
    }
    u.free_loops_ = code.free_components;
    return u;
}

// Number of connected components of the universe, counting free loops.
inline int component_count(const UniverseGraph& u) {
    const int n = u.vertex_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& [h1, h2] : u.edges()) {
        const int a = find(UniverseGraph::vertex_of_half(h1));
        const int b = find(UniverseGraph::vertex_of_half(h2));
        if (a != b)
            parent[static_cast<std::size_t>(a)] = b;
    }
    std::set<int> roots;
    for (int v = 0; v < n; ++v)
        roots.insert(find(v));
    return static_cast<int>(roots.size()) + u.free_loops();
}

// One passage of a circuit through a vertex: it enters via in_half and leaves
// via out_half.
struct EulerStep {
    int vertex;
    int in_half;
    int out_half;
    bool operator==(const EulerStep&) const = default;
};

// One closed circuit per nonempty connected component of the universe.
struct EulerSystem {
    std::vector<std::vector<EulerStep>> circuits;
    bool operator==(const EulerSystem&) const = default;
};

inline void validate_euler_system(const UniverseGraph& u, const EulerSystem& c) {
    std::set<int> used_halves;
    std::map<int, int> visits;
    for (const auto& circuit : c.circuits) {
        if (circuit.empty())
            throw PreconditionError("Euler system contains an empty circuit");
        for (std::size_t k = 0; k < circuit.size(); ++k) {
            const EulerStep& s = circuit[k];
            if (s.in_half < 0 || s.in_half >= u.half_count() || s.out_half < 0 || s.out_half >= u.half_count())
                throw PreconditionError("Euler step references an unknown half-edge");
            if (UniverseGraph::vertex_of_half(s.in_half) != s.vertex ||
                UniverseGraph::vertex_of_half(s.out_half) != s.vertex)
                throw PreconditionError("Euler step half-edges do not belong to its vertex");
            if (!used_halves.insert(s.in_half).second || !used_halves.insert(s.out_half).second)
                throw PreconditionError("half-edge used twice in Euler system");
            ++visits[s.vertex];
            const EulerStep& next = circuit[(k + 1) % circuit.size()];
            if (u.edge_partner(s.out_half) != next.in_half)
                throw PreconditionError("consecutive Euler steps are not joined by an edge");
        }
    }
    for (const auto& [v, count] : visits)
        if (count != 2)
            throw PreconditionError("vertex visited " + std::to_string(count) + " times (must be 2)");
    if (static_cast<int>(used_halves.size()) != u.half_count())
        throw PreconditionError("Euler system does not traverse every edge");
    if (static_cast<int>(c.circuits.size()) != component_count(u) - u.free_loops())
        throw PreconditionError("Euler system must have one circuit per nonempty component");
}

// Deterministic Euler system: Hierholzer from the lowest vertex of each
// component, always taking the lowest unused half-edge.
inline EulerSystem euler_system(const UniverseGraph& u) {
    EulerSystem out;
    const int n = u.vertex_count();
    std::vector<bool> half_used(static_cast<std::size_t>(u.half_count()), false);
    std::vector<bool> vertex_done(static_cast<std::size_t>(n), false);

    auto lowest_unused_half = [&](int v) -> int {
        for (int s = 0; s < 4; ++s)
            if (!half_used[static_cast<std::size_t>(4 * v + s)])
                return 4 * v + s;
        return -1;
    };

    for (int start = 0; start < n; ++start) {
        if (vertex_done[static_cast<std::size_t>(start)] || lowest_unused_half(start) < 0)
            continue;
        // Tour as a sequence of traversals (depart_half, arrive_half).
        std::vector<std::pair<int, int>> tour;
        auto greedy_walk = [&](int v) {
            std::vector<std::pair<int, int>> walk;
            int current = v;
            while (true) {
                const int h = lowest_unused_half(current);
                if (h < 0)
                    break;
                const int h2 = u.edge_partner(h);
                half_used[static_cast<std::size_t>(h)] = true;
                half_used[static_cast<std::size_t>(h2)] = true;
                walk.emplace_back(h, h2);
                current = UniverseGraph::vertex_of_half(h2);
            }
            return walk;
        };
        tour = greedy_walk(start);
        while (true) {
            std::size_t splice_at = tour.size();
            for (std::size_t k = 0; k < tour.size(); ++k) {
                const int at = UniverseGraph::vertex_of_half(tour[k].first);
                if (lowest_unused_half(at) >= 0) {
                    splice_at = k;
                    break;
                }
            }
            if (splice_at == tour.size())
                break;
            const int at = UniverseGraph::vertex_of_half(tour[splice_at].first);
            std::vector<std::pair<int, int>> sub = greedy_walk(at);
            tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(splice_at), sub.begin(), sub.end());
        }
        std::vector<EulerStep> circuit;
        const std::size_t m = tour.size();
        for (std::size_t k = 0; k < m; ++k) {
            const int depart = tour[k].first;
            const int arrive = tour[(k + m - 1) % m].second;
            circuit.push_back({UniverseGraph::vertex_of_half(depart), arrive, depart});
            vertex_done[static_cast<std::size_t>(UniverseGraph::vertex_of_half(depart))] = true;
        }
        out.circuits.push_back(std::move(circuit));
    }
    return out;
}

// Kotzig's kappa-transform C * v: reverse one of the two v-to-v paths of the
// circuit through v. (Which path is reversed is immaterial.)
inline EulerSystem kappa_transform(const EulerSystem& c, int v) {
    for (std::size_t idx = 0; idx < c.circuits.size(); ++idx) {
        const auto& steps = c.circuits[idx];
        std::size_t first = steps.size(), second = steps.size();
        for (std::size_t k = 0; k < steps.size(); ++k) {
            if (steps[k].vertex == v) {
                if (first == steps.size())
                    first = k;
                else {
                    second = k;
                    break;
                }
            }
        }
        if (first == steps.size())
            continue;
        if (second == steps.size())
            throw PreconditionError("vertex appears once in its circuit");
        EulerSystem out = c;
        std::vector<EulerStep> next;
        next.reserve(steps.size());
        for (std::size_t k = 0; k < first; ++k)
            next.push_back(steps[k]);
        next.push_back({v, steps[first].in_half, steps[second].in_half});
        for (std::size_t k = second - 1; k > first; --k)
            next.push_back({steps[k].vertex, steps[k].out_half, steps[k].in_half});
        next.push_back({v, steps[first].out_half, steps[second].out_half});
        for (std::size_t k = second + 1; k < steps.size(); ++k)
            next.push_back(steps[k]);
        out.circuits[idx] = std::move(next);
        return out;
    }
    throw LookupError("vertex " + std::to_string(v) + " lies on no circuit");
}

// The three transition masks at each vertex, classified against the Euler
// system: follow C, orientation-consistent without following C, and
// orientation-inconsistent.
struct TransitionMasks {
    int follow;
    int consistent;
    int inconsistent;
};

inline std::vector<TransitionMasks> transitions_of(const UniverseGraph& u, const EulerSystem& c) {
    std::vector<TransitionMasks> out(static_cast<std::size_t>(u.vertex_count()), TransitionMasks{0, 0, 0});
    std::vector<std::vector<EulerStep>> at(static_cast<std::size_t>(u.vertex_count()));
    for (const auto& circuit : c.circuits)
        for (const EulerStep& s : circuit)
            at[static_cast<std::size_t>(s.vertex)].push_back(s);
    for (int v = 0; v < u.vertex_count(); ++v) {
        const auto& steps = at[static_cast<std::size_t>(v)];
        if (steps.size() != 2)
            throw PreconditionError("vertex visited " + std::to_string(steps.size()) + " times (must be 2)");
        const int in1 = UniverseGraph::slot_of_half(steps[0].in_half);
        const int out1 = UniverseGraph::slot_of_half(steps[0].out_half);
        const int in2 = UniverseGraph::slot_of_half(steps[1].in_half);
        const int out2 = UniverseGraph::slot_of_half(steps[1].out_half);
        TransitionMasks m{in1 ^ out1, in1 ^ out2, in1 ^ in2};
        if ((m.follow | m.consistent | m.inconsistent) != 3 || m.follow == m.consistent ||
            m.follow == m.inconsistent || m.consistent == m.inconsistent)
            throw Error("internal error: degenerate transition triple");
        out[static_cast<std::size_t>(v)] = m;
    }
    return out;
}

// Marked interlacement graph L(D, C): vertices are the crossings (same
// handles as the universe), a vertex is looped iff its crossing is negative,
// two vertices are adjacent iff interlaced along a circuit of C, the graph has
// c(U)-1 free loops, and the mark compares the link transition and the
// oriented smoothing against C's transition triple.
inline MarkedGraph interlacement_graph(const UniverseGraph& u, const EulerSystem& c) {
    validate_euler_system(u, c);
    if (component_count(u) < 1)
        throw PreconditionError("diagram has no components");
    MarkedGraph g;
    for (int v = 0; v < u.vertex_count(); ++v)
        g.add_vertex_with_handle(v, u.sign(v) < 0);

    const std::vector<TransitionMasks> masks = transitions_of(u, c);
    for (int v = 0; v < u.vertex_count(); ++v) {
        const TransitionMasks& m = masks[static_cast<std::size_t>(v)];
        Mark mark;
        if (UniverseGraph::link_mask == m.follow)
            mark = (UniverseGraph::oriented_mask == m.consistent) ? Mark::Unmarked : Mark::R;
        else if (UniverseGraph::link_mask == m.consistent)
            mark = (UniverseGraph::oriented_mask == m.follow) ? Mark::C : Mark::Cr;
        else
            mark = (UniverseGraph::oriented_mask == m.consistent) ? Mark::U : Mark::Ur;
        g.set_mark(v, mark);
    }

    for (const auto& circuit : c.circuits) {
        std::map<int, std::pair<std::size_t, std::size_t>> pos;
        std::map<int, int> seen;
        for (std::size_t k = 0; k < circuit.size(); ++k) {
            const int v = circuit[k].vertex;
            if (seen[v]++ == 0)
                pos[v] = {k, k};
            else
                pos[v].second = k;
        }
        for (auto it1 = pos.begin(); it1 != pos.end(); ++it1) {
            for (auto it2 = std::next(it1); it2 != pos.end(); ++it2) {
                const auto [v1, v2] = it1->second;
                const auto [w1, w2] = it2->second;
                const bool w1_inside = v1 < w1 && w1 < v2;
                const bool w2_inside = v1 < w2 && w2 < v2;
                if (w1_inside != w2_inside)
                    g.set_edge(it1->first, it2->first, true);
            }
        }
    }
    g.set_free_loops(component_count(u) - 1);
    return g;
}

// Diagram-level Kauffman bracket [D] = sum over states of A^a B^b d^(c-1).
// At a positive crossing the A smoothing is the oriented pairing and B the
// disoriented one; at a negative crossing they are interchanged.
inline BracketPoly kauffman_oracle(const GaussCode& code) {
    const UniverseGraph u = build_universe(code);
    const int n = u.vertex_count();
    if (n > 16)
        throw CapacityError("Kauffman oracle is limited to 16 crossings");
    const int total_components = component_count(u);
    if (total_components < 1)
        throw PreconditionError("diagram has no components");

    const int disoriented_mask = UniverseGraph::link_mask ^ UniverseGraph::oriented_mask;
    const int halves = u.half_count();
    std::vector<int> parent(static_cast<std::size_t>(halves));
    BracketPoly total;
    for (std::uint32_t state = 0; state < (std::uint32_t(1) << n); ++state) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        auto unite = [&](int a, int b) {
            a = find(a);
            b = find(b);
            if (a != b)
                parent[static_cast<std::size_t>(a)] = b;
        };
        for (const auto& [h1, h2] : u.edges())
            unite(h1, h2);
        for (int v = 0; v < n; ++v) {
            const bool b_here = (state >> v) & 1u;
            const bool positive = u.sign(v) > 0;
            const int mask = (b_here != positive) ? UniverseGraph::oriented_mask : disoriented_mask;
            for (int s = 0; s < 4; ++s)
                unite(4 * v + s, 4 * v + (s ^ mask));
        }
        std::set<int> roots;
        for (int h = 0; h < halves; ++h)
            roots.insert(find(h));
        const int curves = static_cast<int>(roots.size()) + u.free_loops();
        const unsigned b_count = static_cast<unsigned>(__builtin_popcount(state));
        total.add_term({static_cast<unsigned>(n) - b_count, b_count, static_cast<unsigned>(curves - 1)}, 1);
    }
    return total;
}

// Number of closed circuits (including free loops) in the circuit partition
// selected by one transition mask per vertex.
inline int circuit_partition_size(const UniverseGraph& u, const std::vector<int>& transition_masks) {
    const int n = u.vertex_count();
    if (static_cast<int>(transition_masks.size()) != n)
        throw PreconditionError("one transition mask per vertex required");
    for (int m : transition_masks)
        if (m < 1 || m > 3)
            throw PreconditionError("transition masks must be 1, 2 or 3");
    const int halves = u.half_count();
    std::vector<int> parent(static_cast<std::size_t>(halves));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[static_cast<std::size_t>(a)] = b;
    };
    for (const auto& [h1, h2] : u.edges())
        unite(h1, h2);
    for (int v = 0; v < n; ++v) {
        const int mask = transition_masks[static_cast<std::size_t>(v)];
        for (int s = 0; s < 4; ++s)
            unite(4 * v + s, 4 * v + (s ^ mask));
    }
    std::set<int> roots;
    for (int h = 0; h < halves; ++h)
        roots.insert(find(h));
    return static_cast<int>(roots.size()) + u.free_loops();
}

} // namespace markbracket
