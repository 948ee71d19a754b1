#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "markbracket/bracket.hpp"
#include "markbracket/errors.hpp"
#include "markbracket/marked_graph.hpp"

namespace markbracket {

enum class MoveKind {
    Omega1Remove,
    Omega1Adjoin,
    Omega2a,
    Omega2b,
    Omega2c,
    Omega2d,
    Omega3,
};

inline const char* move_kind_name(MoveKind kind) {
    switch (kind) {
    case MoveKind::Omega1Remove: return "omega1-remove";
    case MoveKind::Omega1Adjoin: return "omega1-adjoin";
    case MoveKind::Omega2a: return "omega2a";
    case MoveKind::Omega2b: return "omega2b";
    case MoveKind::Omega2c: return "omega2c";
    case MoveKind::Omega2d: return "omega2d";
    case MoveKind::Omega3: return "omega3";
    }
    return "?";
}

// targets: Omega1Remove {v}; Omega2a/Omega2d {v, w}; Omega2b/Omega2c {v, w, z}
// with z the pivot witness; Omega3 {u, v, w} with u the looped vertex.
// pre_complements/post_complements conjugate the move by marked local
// complementations.
struct MoveSpec {
    MoveKind kind;
    std::vector<int> targets;
    bool adjoin_loop = false;
    Mark adjoin_mark = Mark::Unmarked;
    std::vector<int> pre_complements;
    std::vector<int> post_complements;
    bool operator==(const MoveSpec&) const = default;
};

namespace detail {

inline void require_targets(const MoveSpec& m, std::size_t count) {
    if (m.targets.size() != count)
        throw MoveNotApplicableError(std::string(move_kind_name(m.kind)) + " expects " +
                                     std::to_string(count) + " target vertices");
}

inline bool same_neighbors_outside(const MarkedGraph& g, int v, int w) {
    std::vector<int> nv = g.neighbors(v), nw = g.neighbors(w);
    std::erase(nv, w);
    std::erase(nw, v);
    return nv == nw;
}

inline MarkedGraph apply_base_move(const MarkedGraph& g, const MoveSpec& m) {
    auto need = [&](bool condition, const char* what) {
        if (!condition)
            throw MoveNotApplicableError(std::string(move_kind_name(m.kind)) + ": " + what);
    };
    switch (m.kind) {
    case MoveKind::Omega1Remove: {
        require_targets(m, 1);
        const int v = m.targets[0];
        need(g.has_vertex(v), "no such vertex");
        need(g.degree(v) == 0, "vertex is not isolated");
        need(g.mark(v) == Mark::Unmarked || g.mark(v) == Mark::U, "mark must not involve c or r");
        return g.without_vertex(v);
    }
    case MoveKind::Omega1Adjoin: {
        require_targets(m, 0);
        need(m.adjoin_mark == Mark::Unmarked || m.adjoin_mark == Mark::U, "mark must not involve c or r");
        MarkedGraph out = g;
        out.add_vertex(m.adjoin_loop, m.adjoin_mark);
        return out;
    }
    case MoveKind::Omega2a: {
        require_targets(m, 2);
        const int v = m.targets[0], w = m.targets[1];
        need(g.has_vertex(v) && g.has_vertex(w) && v != w, "need two distinct vertices");
        need(g.loop(v) && !g.loop(w), "v must be looped and w unlooped");
        need(g.mark(v) == Mark::Unmarked && g.mark(w) == Mark::Unmarked, "both vertices must be unmarked");
        need(same_neighbors_outside(g, v, w), "v and w must have the same neighbors outside the pair");
        MarkedGraph out = g.without_vertex(v);
        out.remove_vertex(w);
        return out;
    }
    case MoveKind::Omega2b:
    case MoveKind::Omega2c: {
        require_targets(m, 3);
        const int v = m.targets[0], w = m.targets[1], z = m.targets[2];
        need(g.has_vertex(v) && g.has_vertex(w) && g.has_vertex(z), "no such vertex");
        need(v != w && v != z && w != z, "targets must be distinct");
        need(g.loop(v) && !g.loop(w), "v must be looped and w unlooped");
        need(g.mark(v) == Mark::C && g.mark(w) == Mark::Unmarked, "v must be marked c and w unmarked");
        if (m.kind == MoveKind::Omega2b) {
            need(g.neighbors(w) == std::vector<int>{v}, "v must be the only neighbor of w");
            need(g.adjacent(v, z), "witness must be a neighbor of v");
        } else {
            need(same_neighbors_outside(g, v, w), "v and w must have the same neighbors outside the pair");
            need(g.adjacent(v, z) && g.adjacent(w, z), "witness must be a neighbor of both");
        }
        MarkedGraph out = marked_pivot(g, v, z);
        out.remove_vertex(v);
        out.remove_vertex(w);
        return out;
    }
    case MoveKind::Omega2d: {
        require_targets(m, 2);
        const int v = m.targets[0], w = m.targets[1];
        need(g.has_vertex(v) && g.has_vertex(w) && v != w, "need two distinct vertices");
        need(g.loop(v) && !g.loop(w), "v must be looped and w unlooped");
        need(g.mark(v) == Mark::C && g.mark(w) == Mark::Unmarked, "v must be marked c and w unmarked");
        need(g.neighbors(w) == std::vector<int>{v}, "v must be the only neighbor of w");
        need(g.neighbors(v) == std::vector<int>{w}, "w must be the only neighbor of v");
        MarkedGraph out = g.without_vertex(v);
        out.remove_vertex(w);
        out.set_free_loops(out.free_loops() + 1);
        return out;
    }
    case MoveKind::Omega3: {
        require_targets(m, 3);
        const int a = m.targets[0], v = m.targets[1], w = m.targets[2];
        need(g.has_vertex(a) && g.has_vertex(v) && g.has_vertex(w), "no such vertex");
        need(a != v && a != w && v != w, "targets must be distinct");
        need(g.mark(a) == Mark::Unmarked && g.mark(v) == Mark::Unmarked && g.mark(w) == Mark::Unmarked,
             "all three vertices must be unmarked");
        need(g.loop(a) && !g.loop(v) && !g.loop(w), "first vertex looped, the others unlooped");
        need(g.adjacent(a, v) && g.adjacent(a, w) && g.adjacent(v, w), "the three vertices must be mutually adjacent");
        for (int x : g.vertices()) {
            if (x == a || x == v || x == w)
                continue;
            const int touches = (g.adjacent(x, a) ? 1 : 0) + (g.adjacent(x, v) ? 1 : 0) + (g.adjacent(x, w) ? 1 : 0);
            need(touches == 0 || touches == 2, "outside vertices must meet none or exactly two of the triple");
        }
        MarkedGraph out = g;
        out.set_edge(a, v, false);
        out.set_edge(a, w, false);
        out.set_edge(v, w, false);
        return out;
    }
    }
    throw MoveNotApplicableError("unknown move kind");
}

} // namespace detail

inline MarkedGraph apply_move(const MarkedGraph& g, const MoveSpec& m) {
    MarkedGraph current = g;
    for (int v : m.pre_complements)
        current = marked_local_complement(current, v);
    current = detail::apply_base_move(current, m);
    for (int v : m.post_complements)
        current = marked_local_complement(current, v);
    return current;
}

// All unconjugated move instances applicable to g, in a deterministic order.
inline std::vector<MoveSpec> detect_moves(const MarkedGraph& g) {
    std::vector<MoveSpec> out;
    const std::vector<int> vs = g.vertices();
    for (int v : vs) {
        if (g.degree(v) == 0 && (g.mark(v) == Mark::Unmarked || g.mark(v) == Mark::U))
            out.push_back({MoveKind::Omega1Remove, {v}});
    }
    for (Mark mark : {Mark::Unmarked, Mark::U})
        for (bool loop : {false, true})
            out.push_back({MoveKind::Omega1Adjoin, {}, loop, mark});
    for (int v : vs) {
        if (!g.loop(v) || g.mark(v) != Mark::Unmarked)
            continue;
        for (int w : vs) {
            if (w == v || g.loop(w) || g.mark(w) != Mark::Unmarked)
                continue;
            if (detail::same_neighbors_outside(g, v, w))
                out.push_back({MoveKind::Omega2a, {v, w}});
        }
    }
    for (int v : vs) {
        if (!g.loop(v) || g.mark(v) != Mark::C)
            continue;
        for (int w : vs) {
            if (w == v || g.loop(w) || g.mark(w) != Mark::Unmarked)
                continue;
            if (g.neighbors(w) == std::vector<int>{v}) {
                for (int z : g.neighbors(v))
                    if (z != w)
                        out.push_back({MoveKind::Omega2b, {v, w, z}});
            }
        }
    }
    for (int v : vs) {
        if (!g.loop(v) || g.mark(v) != Mark::C)
            continue;
        for (int w : vs) {
            if (w == v || g.loop(w) || g.mark(w) != Mark::Unmarked)
                continue;
            if (!detail::same_neighbors_outside(g, v, w))
                continue;
            for (int z : g.neighbors(v))
                if (z != w && g.adjacent(w, z))
                    out.push_back({MoveKind::Omega2c, {v, w, z}});
        }
    }
    for (int v : vs) {
        if (!g.loop(v) || g.mark(v) != Mark::C)
            continue;
        for (int w : vs) {
            if (w == v || g.loop(w) || g.mark(w) != Mark::Unmarked)
                continue;
            if (g.neighbors(w) == std::vector<int>{v} && g.neighbors(v) == std::vector<int>{w})
                out.push_back({MoveKind::Omega2d, {v, w}});
        }
    }
    for (int a : vs) {
        if (!g.loop(a) || g.mark(a) != Mark::Unmarked)
            continue;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const int v = vs[i];
            if (v == a || g.loop(v) || g.mark(v) != Mark::Unmarked)
                continue;
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                const int w = vs[j];
                if (w == a || g.loop(w) || g.mark(w) != Mark::Unmarked)
                    continue;
                if (!(g.adjacent(a, v) && g.adjacent(a, w) && g.adjacent(v, w)))
                    continue;
                bool ok = true;
                for (int x : vs) {
                    if (x == a || x == v || x == w)
                        continue;
                    const int touches =
                        (g.adjacent(x, a) ? 1 : 0) + (g.adjacent(x, v) ? 1 : 0) + (g.adjacent(x, w) ? 1 : 0);
                    if (touches != 0 && touches != 2) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    out.push_back({MoveKind::Omega3, {a, v, w}});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph-links
// ---------------------------------------------------------------------------

struct LabeledVertex {
    int a;    // 0 or 1
    int sign; // +1 or -1
    bool operator==(const LabeledVertex&) const = default;
};

// Simple graph with a pair label (a, sign) on each vertex; no loops.
class LabeledGraph {
public:
    int add_vertex(int a, int sign) {
        const int v = verts_.empty() ? 0 : verts_.rbegin()->first + 1;
        add_vertex_with_handle(v, a, sign);
        return v;
    }
    void add_vertex_with_handle(int v, int a, int sign) {
        if (verts_.count(v))
            throw PreconditionError("vertex handle already in use: " + std::to_string(v));
        if ((a != 0 && a != 1) || (sign != 1 && sign != -1))
            throw PreconditionError("label must be in {0,1} x {+,-}");
        verts_[v] = LabeledVertex{a, sign};
    }
    void remove_vertex(int v) {
        require(v);
        verts_.erase(v);
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->first == v || it->second == v)
                it = edges_.erase(it);
            else
                ++it;
        }
    }
    bool has_vertex(int v) const { return verts_.count(v) != 0; }
    std::vector<int> vertices() const {
        std::vector<int> out;
        for (const auto& [v, l] : verts_)
            out.push_back(v);
        return out;
    }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    LabeledVertex label(int v) const {
        require(v);
        return verts_.at(v);
    }
    void set_label(int v, LabeledVertex l) {
        require(v);
        if ((l.a != 0 && l.a != 1) || (l.sign != 1 && l.sign != -1))
            throw PreconditionError("label must be in {0,1} x {+,-}");
        verts_[v] = l;
    }
    bool adjacent(int v, int w) const {
        require(v);
        require(w);
        if (v == w)
            return false;
        return edges_.count({std::min(v, w), std::max(v, w)}) != 0;
    }
    void set_edge(int v, int w, bool present) {
        require(v);
        require(w);
        if (v == w)
            throw PreconditionError("labeled graphs are loopless");
        const std::pair<int, int> e{std::min(v, w), std::max(v, w)};
        if (present)
            edges_.insert(e);
        else
            edges_.erase(e);
    }
    void toggle_edge(int v, int w) { set_edge(v, w, !adjacent(v, w)); }
    std::vector<int> neighbors(int v) const {
        require(v);
        std::vector<int> out;
        for (const auto& [x, y] : edges_) {
            if (x == v)
                out.push_back(y);
            else if (y == v)
                out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    bool operator==(const LabeledGraph&) const = default;

private:
    void require(int v) const {
        if (!verts_.count(v))
            throw LookupError("no vertex with handle " + std::to_string(v));
    }
    std::map<int, LabeledVertex> verts_;
    std::set<std::pair<int, int>> edges_;
};

// Simple local complement: toggles adjacency among the neighbors of v only.
inline LabeledGraph simple_local_complement(const LabeledGraph& g, int v) {
    LabeledGraph out = g;
    const std::vector<int> nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            out.toggle_edge(nb[i], nb[j]);
    return out;
}

// mark(G): (0,+) -> u looped, (0,-) -> u unlooped, (1,+) -> c unlooped,
// (1,-) -> c looped; non-loop edges preserved; no free loops.
inline MarkedGraph to_marked(const LabeledGraph& g) {
    MarkedGraph out;
    for (int v : g.vertices()) {
        const LabeledVertex l = g.label(v);
        const bool loop = (l.a == 0) ? (l.sign > 0) : (l.sign < 0);
        out.add_vertex_with_handle(v, loop, l.a == 0 ? Mark::U : Mark::C);
    }
    for (const auto& [x, y] : g.edges())
        out.set_edge(x, y, true);
    return out;
}

enum class GraphLinkMove { Og1Remove, Og1Adjoin, Og2Remove, Og3, Og4, Og4Prime };

struct GraphLinkMoveSpec {
    GraphLinkMove kind;
    std::vector<int> targets;
    int adjoin_sign = 1; // Og1Adjoin
    bool operator==(const GraphLinkMoveSpec&) const = default;
};

inline LabeledGraph apply_graphlink_move(const LabeledGraph& g, const GraphLinkMoveSpec& m) {
    auto need = [](bool condition, const char* what) {
        if (!condition)
            throw MoveNotApplicableError(std::string("graph-link move: ") + what);
    };
    switch (m.kind) {
    case GraphLinkMove::Og1Remove: {
        need(m.targets.size() == 1, "expects one target");
        const int v = m.targets[0];
        need(g.has_vertex(v), "no such vertex");
        need(g.neighbors(v).empty(), "vertex is not isolated");
        need(g.label(v).a == 0, "label must be (0, +/-)");
        LabeledGraph out = g;
        out.remove_vertex(v);
        return out;
    }
    case GraphLinkMove::Og1Adjoin: {
        need(m.targets.empty(), "expects no targets");
        LabeledGraph out = g;
        out.add_vertex(0, m.adjoin_sign);
        return out;
    }
    case GraphLinkMove::Og2Remove: {
        need(m.targets.size() == 2, "expects two targets");
        const int v = m.targets[0], w = m.targets[1];
        need(g.has_vertex(v) && g.has_vertex(w) && v != w, "need two distinct vertices");
        const LabeledVertex lv = g.label(v), lw = g.label(w);
        need(lv.a == lw.a && lv.sign == -lw.sign, "labels must be (a, +) and (a, -)");
        need(g.adjacent(v, w) == (lv.a == 1), "(0,*) pairs are non-adjacent, (1,*) pairs adjacent");
        std::vector<int> nv = g.neighbors(v), nw = g.neighbors(w);
        std::erase(nv, w);
        std::erase(nw, v);
        need(nv == nw, "the pair must have the same adjacencies with other vertices");
        LabeledGraph out = g;
        out.remove_vertex(v);
        out.remove_vertex(w);
        return out;
    }
    case GraphLinkMove::Og3: {
        need(m.targets.size() == 3, "expects targets v, w, x");
        const int v = m.targets[0], w = m.targets[1], x = m.targets[2];
        need(g.has_vertex(v) && g.has_vertex(w) && g.has_vertex(x), "no such vertex");
        need(v != w && v != x && w != x, "targets must be distinct");
        for (int y : {v, w, x})
            need(g.label(y) == LabeledVertex{0, -1}, "all three labels must be (0, -)");
        need((g.neighbors(x) == std::vector<int>{std::min(v, w), std::max(v, w)}), "x must have exactly the neighbors v and w");
        need(!g.adjacent(v, w), "v and w must not be neighbors");
        LabeledGraph out = g;
        out.set_label(v, {0, 1});
        out.set_label(w, {0, 1});
        out.set_edge(x, v, false);
        out.set_edge(x, w, false);
        for (int y : g.vertices()) {
            if (y == v || y == w || y == x)
                continue;
            const bool to_v = g.adjacent(y, v), to_w = g.adjacent(y, w);
            if (to_v != to_w)
                out.set_edge(x, y, true);
        }
        return out;
    }
    case GraphLinkMove::Og4: {
        need(m.targets.size() == 2, "expects targets v, w");
        const int v = m.targets[0], w = m.targets[1];
        need(g.has_vertex(v) && g.has_vertex(w) && v != w, "need two distinct vertices");
        need(g.adjacent(v, w), "v and w must be adjacent");
        const LabeledVertex lv = g.label(v), lw = g.label(w);
        need(lv.a == 0 && lw.a == 0, "labels must be (0, alpha) and (0, beta)");
        // Pivot along the edge: toggle adjacency between the three cells of
        // neighbors, keep each vertex's own neighborhood. Equals ((G^v)^w)^v
        // composed with the exchange of v and w, so the labels swap as they
        // negate.
        const std::vector<int> nv = g.neighbors(v), nw = g.neighbors(w);
        std::vector<int> only_v, only_w, both;
        for (int y : nv) {
            if (y == w)
                continue;
            if (std::binary_search(nw.begin(), nw.end(), y))
                both.push_back(y);
            else
                only_v.push_back(y);
        }
        for (int y : nw) {
            if (y == v)
                continue;
            if (!std::binary_search(nv.begin(), nv.end(), y))
                only_w.push_back(y);
        }
        LabeledGraph out = g;
        auto toggle_between = [&out](const std::vector<int>& xs, const std::vector<int>& ys) {
            for (int p : xs)
                for (int q : ys)
                    out.toggle_edge(p, q);
        };
        toggle_between(only_v, only_w);
        toggle_between(only_v, both);
        toggle_between(only_w, both);
        out.set_label(v, {0, -lw.sign});
        out.set_label(w, {0, -lv.sign});
        return out;
    }
    case GraphLinkMove::Og4Prime: {
        need(m.targets.size() == 1, "expects one target");
        const int v = m.targets[0];
        need(g.has_vertex(v), "no such vertex");
        const LabeledVertex lv = g.label(v);
        need(lv.a == 1, "label must be (1, alpha)");
        LabeledGraph out = simple_local_complement(g, v);
        out.set_label(v, {1, -lv.sign});
        for (int w : g.neighbors(v)) {
            const LabeledVertex lw = g.label(w);
            out.set_label(w, {1 - lw.a, lw.sign});
        }
        return out;
    }
    }
    throw MoveNotApplicableError("unknown graph-link move kind");
}

// ---------------------------------------------------------------------------
// Bounded equivalence search
// ---------------------------------------------------------------------------

enum class Verdict { Equivalent, DistinctByInvariant, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::DistinctByInvariant: return "distinct-by-invariant";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Breadth-first search over marked local complementations and detected moves,
// deduplicated by certificate. Jones is invariant under every generator, so a
// Jones mismatch is a definitive negative; exhaustion of the node budget is
// reported as inconclusive, never as a claim of completeness.
inline Verdict equivalent_bounded(const MarkedGraph& g, const MarkedGraph& h, int budget) {
    if (!g.all_default_weights() || !h.all_default_weights())
        throw PreconditionError("equivalence search expects default vertex weights");
    if (jones(g) != jones(h))
        return Verdict::DistinctByInvariant;
    const int iso_limit = 10;
    const int size_cap = std::min(iso_limit, std::max(g.vertex_count(), h.vertex_count()) + 2);
    const int free_loop_cap = std::max(g.free_loops(), h.free_loops()) + 2;
    if (g.vertex_count() > iso_limit || h.vertex_count() > iso_limit)
        throw CapacityError("equivalence search limited to " + std::to_string(iso_limit) + " vertices");

    std::deque<MarkedGraph> frontier{g};
    std::set<std::string> visited{canonical_key(g)};
    int expanded = 0;
    while (!frontier.empty()) {
        if (expanded >= budget)
            return Verdict::Inconclusive;
        MarkedGraph current = frontier.front();
        frontier.pop_front();
        ++expanded;
        if (is_isomorphic(current, h, iso_limit))
            return Verdict::Equivalent;
        std::vector<MarkedGraph> successors;
        for (int v : current.vertices())
            successors.push_back(marked_local_complement(current, v));
        for (const MoveSpec& m : detect_moves(current))
            successors.push_back(apply_move(current, m));
        for (MarkedGraph& next : successors) {
            if (next.vertex_count() > size_cap || next.free_loops() > free_loop_cap)
                continue;
            std::string key = canonical_key(next);
            if (visited.insert(std::move(key)).second)
                frontier.push_back(std::move(next));
        }
    }
    return Verdict::Inconclusive;
}

} // namespace markbracket
