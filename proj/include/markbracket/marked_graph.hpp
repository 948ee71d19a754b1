#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "markbracket/errors.hpp"
#include "markbracket/poly.hpp"

namespace markbracket {

// The six vertex marks. The letter records which transition the Euler system
// uses at the crossing; the r records a reversed passage.
enum class Mark : std::uint8_t { Unmarked, R, C, Cr, U, Ur };

constexpr bool has_r(Mark m) { return m == Mark::R || m == Mark::Cr || m == Mark::Ur; }

constexpr char letter(Mark m) {
    switch (m) {
    case Mark::C:
    case Mark::Cr:
        return 'c';
    case Mark::U:
    case Mark::Ur:
        return 'u';
    default:
        return '\0';
    }
}

constexpr Mark toggle_r(Mark m) {
    switch (m) {
    case Mark::Unmarked: return Mark::R;
    case Mark::R: return Mark::Unmarked;
    case Mark::C: return Mark::Cr;
    case Mark::Cr: return Mark::C;
    case Mark::U: return Mark::Ur;
    case Mark::Ur: return Mark::U;
    }
    return m;
}

constexpr const char* mark_name(Mark m) {
    switch (m) {
    case Mark::Unmarked: return "";
    case Mark::R: return "r";
    case Mark::C: return "c";
    case Mark::Cr: return "cr";
    case Mark::U: return "u";
    case Mark::Ur: return "ur";
    }
    return "";
}

inline std::optional<Mark> mark_from_name(std::string_view name) {
    if (name == "") return Mark::Unmarked;
    if (name == "r") return Mark::R;
    if (name == "c") return Mark::C;
    if (name == "cr") return Mark::Cr;
    if (name == "u") return Mark::U;
    if (name == "ur") return Mark::Ur;
    return std::nullopt;
}

struct VertexAttrs {
    bool loop = false;
    Mark mark = Mark::Unmarked;
    // Set only when different from the default pair (A, B).
    std::optional<std::pair<BracketPoly, BracketPoly>> weights;
    bool operator==(const VertexAttrs&) const = default;
};

// Multiply marked graph: loops and marks per vertex, optional vertex weights,
// a count of free loops, and a simple symmetric adjacency. Vertices carry
// stable integer handles that survive deletions.
class MarkedGraph {
public:
    int add_vertex(bool loop = false, Mark mark = Mark::Unmarked) {
        const int v = verts_.empty() ? 0 : verts_.rbegin()->first + 1;
        verts_[v] = VertexAttrs{loop, mark, std::nullopt};
        return v;
    }

    void add_vertex_with_handle(int v, bool loop = false, Mark mark = Mark::Unmarked) {
        if (verts_.count(v))
            throw PreconditionError("vertex handle already in use: " + std::to_string(v));
        verts_[v] = VertexAttrs{loop, mark, std::nullopt};
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
        out.reserve(verts_.size());
        for (const auto& [v, attrs] : verts_)
            out.push_back(v);
        return out;
    }

    int vertex_count() const { return static_cast<int>(verts_.size()); }

    int loop_count() const {
        int n = 0;
        for (const auto& [v, attrs] : verts_)
            n += attrs.loop ? 1 : 0;
        return n;
    }

    bool loop(int v) const { return attrs(v).loop; }
    void set_loop(int v, bool value) { mutable_attrs(v).loop = value; }
    Mark mark(int v) const { return attrs(v).mark; }
    void set_mark(int v, Mark m) { mutable_attrs(v).mark = m; }

    BracketPoly alpha(int v) const {
        const auto& w = attrs(v).weights;
        return w ? w->first : BracketPoly::var_a();
    }
    BracketPoly beta(int v) const {
        const auto& w = attrs(v).weights;
        return w ? w->second : BracketPoly::var_b();
    }
    void set_weights(int v, BracketPoly alpha_w, BracketPoly beta_w) {
        auto& a = mutable_attrs(v);
        if (alpha_w == BracketPoly::var_a() && beta_w == BracketPoly::var_b())
            a.weights.reset();
        else
            a.weights = std::make_pair(std::move(alpha_w), std::move(beta_w));
    }
    bool default_weights(int v) const { return !attrs(v).weights.has_value(); }
    bool all_default_weights() const {
        for (const auto& [v, a] : verts_)
            if (a.weights)
                return false;
        return true;
    }

    bool adjacent(int v, int w) const {
        require(v);
        require(w);
        if (v == w)
            return false;
        return edges_.count(ordered(v, w)) != 0;
    }

    void set_edge(int v, int w, bool present) {
        require(v);
        require(w);
        if (v == w)
            throw PreconditionError("self-edges are not representable; use the loop flag");
        if (present)
            edges_.insert(ordered(v, w));
        else
            edges_.erase(ordered(v, w));
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

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    int free_loops() const { return free_loops_; }
    void set_free_loops(int k) {
        if (k < 0)
            throw PreconditionError("free loop count must be nonnegative");
        free_loops_ = k;
    }

    MarkedGraph without_vertex(int v) const {
        MarkedGraph out = *this;
        out.remove_vertex(v);
        return out;
    }

    bool operator==(const MarkedGraph&) const = default;

private:
    static std::pair<int, int> ordered(int v, int w) { return {std::min(v, w), std::max(v, w)}; }

    const VertexAttrs& attrs(int v) const {
        auto it = verts_.find(v);
        if (it == verts_.end())
            throw LookupError("no vertex with handle " + std::to_string(v));
        return it->second;
    }
    VertexAttrs& mutable_attrs(int v) {
        auto it = verts_.find(v);
        if (it == verts_.end())
            throw LookupError("no vertex with handle " + std::to_string(v));
        return it->second;
    }
    void require(int v) const { attrs(v); }

    std::map<int, VertexAttrs> verts_;
    std::set<std::pair<int, int>> edges_;
    int free_loops_ = 0;
};

namespace detail {

constexpr Mark mlc_self_mark(Mark m) {
    switch (m) {
    case Mark::Unmarked: return Mark::U;
    case Mark::U: return Mark::Unmarked;
    case Mark::R: return Mark::Ur;
    case Mark::Ur: return Mark::R;
    case Mark::C: return Mark::Cr;
    case Mark::Cr: return Mark::C;
    }
    return m;
}

constexpr Mark mlc_neighbor_mark(Mark m) {
    switch (m) {
    case Mark::Unmarked: return Mark::R;
    case Mark::R: return Mark::Unmarked;
    case Mark::C: return Mark::Ur;
    case Mark::Ur: return Mark::C;
    case Mark::U: return Mark::Cr;
    case Mark::Cr: return Mark::U;
    }
    return m;
}

constexpr Mark pivot_end_mark(Mark m) {
    switch (m) {
    case Mark::C: return Mark::Unmarked;
    case Mark::Unmarked: return Mark::C;
    case Mark::R: return Mark::Cr;
    case Mark::Cr: return Mark::R;
    case Mark::U: return Mark::Ur;
    case Mark::Ur: return Mark::U;
    }
    return m;
}

} // namespace detail

// Marked local complement G^v_cru: mark of v swaps unmarked<->u, r<->ur,
// c<->cr; marks of neighbors swap unmarked<->r, c<->ur, u<->cr; adjacency is
// toggled between distinct neighbors of v. No loop is toggled.
inline MarkedGraph marked_local_complement(const MarkedGraph& g, int v) {
    MarkedGraph out = g;
    const std::vector<int> nb = g.neighbors(v); // throws LookupError for unknown v
    out.set_mark(v, detail::mlc_self_mark(g.mark(v)));
    for (int w : nb)
        out.set_mark(w, detail::mlc_neighbor_mark(g.mark(w)));
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            out.toggle_edge(nb[i], nb[j]);
    return out;
}

// Plain local complement G^v: toggles loops of the neighbors of v and the
// adjacency between distinct neighbors of v; marks are untouched.
inline MarkedGraph plain_local_complement(const MarkedGraph& g, int v) {
    MarkedGraph out = g;
    const std::vector<int> nb = g.neighbors(v);
    for (int w : nb)
        out.set_loop(w, !g.loop(w));
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            out.toggle_edge(nb[i], nb[j]);
    return out;
}

// Marked pivot G^{vw}_cru = ((G^v)^w)^v, defined for adjacent v, w.
inline MarkedGraph marked_pivot(const MarkedGraph& g, int v, int w) {
    if (v == w || !g.adjacent(v, w))
        throw PreconditionError("marked pivot requires adjacent distinct vertices");
    return marked_local_complement(marked_local_complement(marked_local_complement(g, v), w), v);
}

// The pivot computed from its direct description: marks of v and w swap
// c<->unmarked, r<->cr, u<->ur; the neighbor sets of v and w are exchanged;
// adjacency is toggled between vertices in different cells of
// {N(v)-N(w), N(w)-N(v), N(v) n N(w)} (cells taken outside {v, w}).
inline MarkedGraph marked_pivot_direct(const MarkedGraph& g, int v, int w) {
    if (v == w || !g.adjacent(v, w))
        throw PreconditionError("marked pivot requires adjacent distinct vertices");
    const std::vector<int> nv = g.neighbors(v);
    const std::vector<int> nw = g.neighbors(w);
    std::vector<int> only_v, only_w, both;
    for (int x : nv) {
        if (x == w)
            continue;
        if (std::binary_search(nw.begin(), nw.end(), x))
            both.push_back(x);
        else
            only_v.push_back(x);
    }
    for (int x : nw) {
        if (x == v)
            continue;
        if (!std::binary_search(nv.begin(), nv.end(), x))
            only_w.push_back(x);
    }

    MarkedGraph out = g;
    out.set_mark(v, detail::pivot_end_mark(g.mark(v)));
    out.set_mark(w, detail::pivot_end_mark(g.mark(w)));
    // Exchange the neighbor sets of v and w; the edge v-w stays.
    for (int x : only_v) {
        out.set_edge(v, x, false);
        out.set_edge(w, x, true);
    }
    for (int x : only_w) {
        out.set_edge(w, x, false);
        out.set_edge(v, x, true);
    }
    auto toggle_between = [&out](const std::vector<int>& xs, const std::vector<int>& ys) {
        for (int x : xs)
            for (int y : ys)
                out.toggle_edge(x, y);
    };
    toggle_between(only_v, only_w);
    toggle_between(only_v, both);
    toggle_between(only_w, both);
    return out;
}

// Removes the r from every mark that has one and toggles that vertex's loop.
inline MarkedGraph r_simplify(const MarkedGraph& g) {
    MarkedGraph out = g;
    for (int v : g.vertices()) {
        if (has_r(g.mark(v))) {
            out.set_mark(v, toggle_r(g.mark(v)));
            out.set_loop(v, !g.loop(v));
        }
    }
    return out;
}

// Toggles both the loop status and the letter r at one vertex.
inline MarkedGraph toggle_loop_and_r(const MarkedGraph& g, int v) {
    MarkedGraph out = g;
    out.set_mark(v, toggle_r(g.mark(v)));
    out.set_loop(v, !g.loop(v));
    return out;
}

inline int writhe(const MarkedGraph& g) { return g.vertex_count() - 2 * g.loop_count(); }

namespace detail {

struct IsoProfile {
    Mark mark;
    bool loop;
    int degree;
    auto operator<=>(const IsoProfile&) const = default;
};

inline bool iso_backtrack(const MarkedGraph& g, const MarkedGraph& h,
                          const std::vector<int>& gv, const std::vector<int>& hv,
                          std::vector<int>& image, std::vector<bool>& used, std::size_t k) {
    if (k == gv.size())
        return true;
    const int a = gv[k];
    for (std::size_t j = 0; j < hv.size(); ++j) {
        if (used[j])
            continue;
        const int b = hv[j];
        if (g.mark(a) != h.mark(b) || g.loop(a) != h.loop(b) || g.degree(a) != h.degree(b))
            continue;
        bool ok = true;
        for (std::size_t prev = 0; prev < k; ++prev) {
            if (g.adjacent(gv[prev], a) != h.adjacent(hv[image[prev]], b)) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        image[k] = static_cast<int>(j);
        used[j] = true;
        if (iso_backtrack(g, h, gv, hv, image, used, k + 1))
            return true;
        used[j] = false;
    }
    return false;
}

} // namespace detail

// Exhaustive isomorphism test with degree/mark/loop pruning. A bijection must
// preserve adjacency, loops and marks, and the free-loop counts must agree.
// Vertex weights are not compared.
inline bool is_isomorphic(const MarkedGraph& g, const MarkedGraph& h, int max_n = 10) {
    if (g.vertex_count() != h.vertex_count() || g.free_loops() != h.free_loops())
        return false;
    if (g.edges().size() != h.edges().size())
        return false;
    if (g.vertex_count() > max_n)
        throw CapacityError("isomorphism test limited to " + std::to_string(max_n) + " vertices");
    std::vector<int> gv = g.vertices(), hv = h.vertices();
    auto profile_of = [](const MarkedGraph& x, int v) {
        return detail::IsoProfile{x.mark(v), x.loop(v), x.degree(v)};
    };
    std::vector<detail::IsoProfile> pg, ph;
    for (int v : gv)
        pg.push_back(profile_of(g, v));
    for (int v : hv)
        ph.push_back(profile_of(h, v));
    std::sort(pg.begin(), pg.end());
    std::sort(ph.begin(), ph.end());
    if (pg != ph)
        return false;
    std::vector<int> image(gv.size(), -1);
    std::vector<bool> used(hv.size(), false);
    return detail::iso_backtrack(g, h, gv, hv, image, used, 0);
}

namespace detail {

inline std::string encode_under_order(const MarkedGraph& g, const std::vector<int>& order) {
    std::string s;
    s += std::to_string(g.free_loops());
    s += '|';
    for (int v : order) {
        s += std::to_string(static_cast<int>(g.mark(v)));
        s += g.loop(v) ? 'L' : '.';
    }
    s += '|';
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            s += g.adjacent(order[i], order[j]) ? '1' : '0';
    return s;
}

} // namespace detail

// Isomorphism-invariant certificate: vertices are partitioned by iterated
// (mark, loop, degree, neighbor-class) refinement and the minimum encoding
// over class-respecting orderings is taken. Falls back to a plain (finer)
// serialization when the class structure would make the search too large;
// such keys still never identify non-isomorphic graphs.
inline std::string canonical_key(const MarkedGraph& g, long permutation_limit = 100000) {
    const std::vector<int> vs = g.vertices();
    const std::size_t n = vs.size();
    std::map<int, int> color;
    for (int v : vs)
        color[v] = 0;
    for (std::size_t round = 0; round <= n; ++round) {
        std::map<int, std::vector<long>> sigs;
        std::map<std::vector<long>, int> rank; // ordered by content, so ranks are iso-invariant
        for (int v : vs) {
            std::vector<long> sig{static_cast<long>(g.mark(v)), g.loop(v) ? 1 : 0, color[v]};
            std::vector<long> nb_colors;
            for (int w : g.neighbors(v))
                nb_colors.push_back(color[w]);
            std::sort(nb_colors.begin(), nb_colors.end());
            sig.insert(sig.end(), nb_colors.begin(), nb_colors.end());
            rank[sig];
            sigs[v] = std::move(sig);
        }
        int next_id = 0;
        for (auto& [sig, id] : rank)
            id = next_id++;
        std::map<int, int> next;
        for (int v : vs)
            next[v] = rank[sigs[v]];
        if (next == color)
            break;
        color = std::move(next);
    }
    // Group by final color; order classes by their signature id.
    std::map<int, std::vector<int>> classes;
    for (int v : vs)
        classes[color[v]].push_back(v);
    long perms = 1;
    for (const auto& [c, members] : classes) {
        for (std::size_t k = 2; k <= members.size(); ++k) {
            perms *= static_cast<long>(k);
            if (perms > permutation_limit)
                break;
        }
        if (perms > permutation_limit)
            break;
    }
    if (perms > permutation_limit) {
        std::string s = "X|";
        s += std::to_string(g.free_loops());
        for (int v : vs) {
            s += '|';
            s += std::to_string(v) + ":" + std::to_string(static_cast<int>(g.mark(v))) + (g.loop(v) ? "L" : ".");
        }
        for (const auto& [x, y] : g.edges())
            s += "|" + std::to_string(x) + "-" + std::to_string(y);
        return s;
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [c, members] : classes) {
        std::sort(members.begin(), members.end());
        blocks.push_back(members);
    }
    std::string best;
    std::vector<int> order;
    order.reserve(n);
    auto rec = [&](auto&& self, std::size_t block_idx) -> void {
        if (block_idx == blocks.size()) {
            std::string enc = detail::encode_under_order(g, order);
            if (best.empty() || enc < best)
                best = std::move(enc);
            return;
        }
        std::vector<int> perm = blocks[block_idx];
        do {
            order.insert(order.end(), perm.begin(), perm.end());
            self(self, block_idx + 1);
            order.resize(order.size() - perm.size());
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(rec, 0);
    return best;
}

} // namespace markbracket
