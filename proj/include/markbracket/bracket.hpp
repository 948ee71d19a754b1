#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "markbracket/errors.hpp"
#include "markbracket/gf2.hpp"
#include "markbracket/marked_graph.hpp"
#include "markbracket/poly.hpp"

namespace markbracket {

// The matrix A(G)_T together with the record of removed vertices.
struct StateMatrix {
    Gf2Matrix matrix;
    std::vector<int> kept;    // vertex handles, in row order
    std::vector<int> removed; // vertex handles whose row/column was removed
};

namespace detail {

struct StateTables {
    std::vector<int> handles;          // sorted
    std::vector<std::uint32_t> adj;    // adjacency bitmask per index
    std::vector<bool> loops;
    std::vector<bool> r_flags;
    std::vector<char> letters;         // '\0', 'c' or 'u'
};

inline StateTables state_tables(const MarkedGraph& g) {
    StateTables t;
    t.handles = g.vertices();
    const std::size_t n = t.handles.size();
    if (n > 32)
        throw CapacityError("state matrices are limited to 32 vertices");
    t.adj.assign(n, 0);
    t.loops.assign(n, false);
    t.r_flags.assign(n, false);
    t.letters.assign(n, '\0');
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        index[t.handles[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
        const int v = t.handles[i];
        t.loops[i] = g.loop(v);
        t.r_flags[i] = has_r(g.mark(v));
        t.letters[i] = letter(g.mark(v));
    }
    for (const auto& [x, y] : g.edges()) {
        const std::size_t i = index[x], j = index[y];
        t.adj[i] |= std::uint32_t(1) << j;
        t.adj[j] |= std::uint32_t(1) << i;
    }
    return t;
}

// Builds A(G)+Delta_T restricted to the kept vertices for T given as a bitmask.
inline StateMatrix state_matrix_masked(const StateTables& t, std::uint32_t t_mask) {
    const std::size_t n = t.handles.size();
    std::vector<std::size_t> kept;
    StateMatrix out;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in_t = (t_mask >> i) & 1u;
        const bool diag = t.loops[i] ^ in_t ^ t.r_flags[i];
        const bool removed = (t.letters[i] == 'c' && !diag) || (t.letters[i] == 'u' && diag);
        if (removed)
            out.removed.push_back(t.handles[i]);
        else
            kept.push_back(i);
    }
    out.matrix = Gf2Matrix(kept.size(), kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const std::size_t i = kept[r];
        out.kept.push_back(t.handles[i]);
        for (std::size_t c = 0; c < kept.size(); ++c) {
            const std::size_t j = kept[c];
            if (i == j) {
                const bool in_t = (t_mask >> i) & 1u;
                out.matrix.set(r, c, t.loops[i] ^ in_t ^ t.r_flags[i]);
            } else {
                out.matrix.set(r, c, (t.adj[i] >> j) & 1u);
            }
        }
    }
    return out;
}

} // namespace detail

// A(G)_T: the Boolean adjacency matrix plus the diagonal adjustment Delta_T,
// with the row and column of v removed when (v is marked c/cr and the combined
// diagonal entry is 0) or (v is marked u/ur and it is 1).
inline StateMatrix state_matrix(const MarkedGraph& g, const std::set<int>& t_set) {
    for (int v : t_set)
        if (!g.has_vertex(v))
            throw PreconditionError("state set contains unknown vertex " + std::to_string(v));
    const detail::StateTables t = detail::state_tables(g);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < t.handles.size(); ++i)
        if (t_set.count(t.handles[i]))
            mask |= std::uint32_t(1) << i;
    return detail::state_matrix_masked(t, mask);
}

// Marked-graph bracket polynomial
//   [G] = d^phi * sum over T of (prod_{v not in T} alpha(v)) (prod_{t in T} beta(t)) d^{nu(A(G)_T)}
// with default weights alpha = A, beta = B. Contributions of disjoint subset
// ranges are independent and may be summed in any order.
inline BracketPoly bracket(const MarkedGraph& g) {
    const detail::StateTables t = detail::state_tables(g);
    const std::size_t n = t.handles.size();
    BracketPoly total;
    const unsigned phi = static_cast<unsigned>(g.free_loops());
    if (g.all_default_weights()) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            const StateMatrix sm = detail::state_matrix_masked(t, static_cast<std::uint32_t>(mask));
            const unsigned in_t = static_cast<unsigned>(__builtin_popcountll(mask));
            total.add_term({static_cast<unsigned>(n) - in_t, in_t,
                            static_cast<unsigned>(sm.matrix.nullity()) + phi},
                           1);
        }
        return total;
    }
    std::vector<BracketPoly> alphas, betas;
    for (int v : t.handles) {
        alphas.push_back(g.alpha(v));
        betas.push_back(g.beta(v));
    }
    // Depth-first over subsets so partial weight products are shared.
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t mask, const BracketPoly& product) -> void {
        if (product.is_zero())
            return;
        if (i == n) {
            const StateMatrix sm = detail::state_matrix_masked(t, mask);
            total += product * BracketPoly::d_power(static_cast<unsigned>(sm.matrix.nullity()) + phi);
            return;
        }
        self(self, i + 1, mask, product * alphas[i]);
        self(self, i + 1, mask | (std::uint32_t(1) << i), product * betas[i]);
    };
    rec(rec, 0, 0, BracketPoly(1));
    return total;
}

namespace detail {

// [{v}] for a single vertex with the given attributes.
inline BracketPoly one_vertex_bracket(bool loop, Mark mark, const BracketPoly& alpha, const BracketPoly& beta) {
    auto nu = [&](bool in_t) -> unsigned {
        const bool diag = loop ^ in_t ^ has_r(mark);
        const char l = letter(mark);
        const bool removed = (l == 'c' && !diag) || (l == 'u' && diag);
        if (removed)
            return 0;
        return diag ? 0 : 1;
    };
    return alpha * BracketPoly::d_power(nu(false)) + beta * BracketPoly::d_power(nu(true));
}

inline std::string memo_key(const MarkedGraph& g) {
    std::string s;
    for (int v : g.vertices()) {
        s += std::to_string(v) + ":" + std::to_string(static_cast<int>(g.mark(v))) + (g.loop(v) ? "L" : ".");
        if (!g.default_weights(v))
            s += "[" + g.alpha(v).str(false) + ";" + g.beta(v).str(false) + "]";
        s += ",";
    }
    s += "|";
    for (const auto& [x, y] : g.edges())
        s += std::to_string(x) + "-" + std::to_string(y) + ",";
    return s;
}

inline BracketPoly bracket_rec_impl(MarkedGraph g, std::unordered_map<std::string, BracketPoly>& memo) {
    BracketPoly multiplier(1);
    // Free loops contribute a factor d each.
    if (g.free_loops() > 0) {
        multiplier *= BracketPoly::d_power(static_cast<unsigned>(g.free_loops()));
        g.set_free_loops(0);
    }
    // Isolated vertices split off as one-vertex brackets.
    for (bool changed = true; changed;) {
        changed = false;
        for (int v : g.vertices()) {
            if (g.degree(v) == 0) {
                multiplier *= one_vertex_bracket(g.loop(v), g.mark(v), g.alpha(v), g.beta(v));
                g.remove_vertex(v);
                changed = true;
                break;
            }
        }
    }
    if (g.vertex_count() == 0)
        return multiplier;

    const bool use_memo = g.vertex_count() <= 16;
    std::string key;
    if (use_memo) {
        key = memo_key(g);
        auto it = memo.find(key);
        if (it != memo.end())
            return multiplier * it->second;
    }

    BracketPoly core;
    bool have_core = false;
    // A vertex marked c or cr is eliminated by a two-branch step; the
    // coefficient order flips when the loop status disagrees with the letter r.
    for (int v : g.vertices()) {
        const Mark m = g.mark(v);
        if (letter(m) == 'c') {
            const bool plain_order = (m == Mark::C && !g.loop(v)) || (m == Mark::Cr && g.loop(v));
            const BracketPoly first = plain_order ? g.alpha(v) : g.beta(v);
            const BracketPoly second = plain_order ? g.beta(v) : g.alpha(v);
            core = first * bracket_rec_impl(g.without_vertex(v), memo) +
                   second * bracket_rec_impl(marked_local_complement(g, v).without_vertex(v), memo);
            have_core = true;
            break;
        }
    }
    if (!have_core) {
        // Complement at the lowest vertex with a u/ur neighbor; the complement
        // turns those neighbors into c/cr vertices.
        for (int v : g.vertices()) {
            bool has_u_neighbor = false;
            for (int w : g.neighbors(v))
                if (letter(g.mark(w)) == 'u') {
                    has_u_neighbor = true;
                    break;
                }
            if (has_u_neighbor) {
                core = bracket_rec_impl(marked_local_complement(g, v), memo);
                have_core = true;
                break;
            }
        }
    }
    if (!have_core) {
        // Only unmarked and r-marked vertices remain and none is isolated;
        // complement at the lowest vertex with a neighbor.
        for (int v : g.vertices()) {
            if (g.degree(v) > 0) {
                core = bracket_rec_impl(marked_local_complement(g, v), memo);
                have_core = true;
                break;
            }
        }
    }
    if (use_memo)
        memo[key] = core;
    return multiplier * core;
}

} // namespace detail

// Recursive evaluation of the bracket; equals bracket(g) on every graph.
inline BracketPoly bracket_recursive(const MarkedGraph& g) {
    std::unordered_map<std::string, BracketPoly> memo;
    return detail::bracket_rec_impl(g, memo);
}

// Switching formula at a looped unmarked vertex:
//   A [G] = B [G - {v,v}] + (A^2 - B^2) [G^v_cru - v],
// returned after the exact division by A.
inline BracketPoly switch_step(const MarkedGraph& g, int v) {
    if (!g.has_vertex(v))
        throw LookupError("no vertex with handle " + std::to_string(v));
    if (!g.loop(v) || g.mark(v) != Mark::Unmarked || !g.default_weights(v))
        throw PreconditionError("switch_step requires a looped, unmarked vertex with default weights");
    MarkedGraph unlooped = g;
    unlooped.set_loop(v, false);
    const BracketPoly lhs =
        BracketPoly::var_b() * bracket_recursive(unlooped) +
        (BracketPoly::monomial(2, 0, 0) - BracketPoly::monomial(0, 2, 0)) *
            bracket_recursive(marked_local_complement(g, v).without_vertex(v));
    return exact_divide(lhs, BracketPoly::var_a());
}

// Double smoothing at an unlooped, unmarked adjacent pair:
//   [G] = A^2 [G^{vw}_cru - v - w] + AB [(G^w_cru)^v_cru - v - w] + B [G^v_cru - v].
inline BracketPoly double_smoothing_step(const MarkedGraph& g, int v, int w) {
    if (!g.has_vertex(v) || !g.has_vertex(w))
        throw LookupError("unknown vertex handle");
    if (v == w || !g.adjacent(v, w) || g.loop(v) || g.loop(w) || g.mark(v) != Mark::Unmarked ||
        g.mark(w) != Mark::Unmarked || !g.default_weights(v) || !g.default_weights(w))
        throw PreconditionError("double_smoothing_step requires adjacent unlooped unmarked vertices");
    MarkedGraph pivoted = marked_pivot(g, v, w);
    pivoted.remove_vertex(v);
    pivoted.remove_vertex(w);
    MarkedGraph wv = marked_local_complement(marked_local_complement(g, w), v);
    wv.remove_vertex(v);
    wv.remove_vertex(w);
    return BracketPoly::monomial(2, 0, 0) * bracket_recursive(pivoted) +
           BracketPoly::monomial(1, 1, 0) * bracket_recursive(wv) +
           BracketPoly::var_b() * bracket_recursive(marked_local_complement(g, v).without_vertex(v));
}

enum class TwinCase { A, B, C, D };

struct TwinReduction {
    MarkedGraph reduced;
    // Case D only: coefficient alpha(v)*beta(w) and the graph G - v - w.
    std::optional<std::pair<BracketPoly, MarkedGraph>> remainder;
};

// Twin reductions for nonadjacent, unlooped twins v, w:
//   (a) both marked u, (b) v unmarked and w marked u, (c) both unmarked
//       (v additionally acquires a mark of u),
//   (d) v marked c and w marked u, with remainder alpha(v)beta(w)[G - v - w].
inline TwinReduction twin_reduce(const MarkedGraph& g, int v, int w, TwinCase twin_case) {
    if (!g.has_vertex(v) || !g.has_vertex(w))
        throw LookupError("unknown vertex handle");
    if (v == w || g.adjacent(v, w) || g.loop(v) || g.loop(w))
        throw PreconditionError("twin_reduce requires distinct nonadjacent unlooped vertices");
    std::vector<int> nv = g.neighbors(v), nw = g.neighbors(w);
    if (nv != nw)
        throw PreconditionError("twin_reduce requires identical neighborhoods outside {v, w}");
    const Mark mv = g.mark(v), mw = g.mark(w);
    auto require_marks = [&](Mark want_v, Mark want_w) {
        if (mv != want_v || mw != want_w)
            throw PreconditionError("vertex marks do not match the selected twin case");
    };
    const BracketPoly av = g.alpha(v), bv = g.beta(v), aw = g.alpha(w), bw = g.beta(w);
    TwinReduction out{g, std::nullopt};
    out.reduced.remove_vertex(w);
    switch (twin_case) {
    case TwinCase::A:
        require_marks(Mark::U, Mark::U);
        out.reduced.set_weights(v, av * aw * BracketPoly::var_d() + av * bw + bv * aw, bv * bw);
        break;
    case TwinCase::B:
        require_marks(Mark::Unmarked, Mark::U);
        out.reduced.set_weights(v, av * aw * BracketPoly::var_d() + av * bw + bv * aw, bv * bw);
        break;
    case TwinCase::C:
        require_marks(Mark::Unmarked, Mark::Unmarked);
        out.reduced.set_mark(v, Mark::U);
        out.reduced.set_weights(v, av * aw * BracketPoly::var_d() + av * bw + bv * aw, bv * bw);
        break;
    case TwinCase::D: {
        require_marks(Mark::C, Mark::U);
        out.reduced.set_mark(v, Mark::Unmarked);
        out.reduced.set_weights(v, av * aw + bv * aw, bv * bw);
        MarkedGraph rest = g;
        rest.remove_vertex(v);
        rest.remove_vertex(w);
        out.remainder = std::make_pair(av * bw, std::move(rest));
        break;
    }
    }
    return out;
}

// <G>: the bracket with B -> A^-1 and d -> -A^-2 - A^2. Defined for graphs
// with default weights only.
inline LaurentA reduced_bracket(const MarkedGraph& g) {
    if (!g.all_default_weights())
        throw PreconditionError("reduced bracket is not defined for custom vertex weights");
    return reduce_to_laurent(bracket_recursive(g));
}

// V_G as a Laurent polynomial in A (A = t^(-1/4)):
//   V_G = (-1)^n A^{6 ell - 3 n} <G>.
inline LaurentA jones(const MarkedGraph& g) {
    const LaurentA reduced = reduced_bracket(g);
    const int n = g.vertex_count();
    const int ell = g.loop_count();
    LaurentA out = reduced.shifted(6 * ell - 3 * n);
    if (n % 2 != 0)
        out = -out;
    return out;
}

// Composition F * H over a shared unlooped, unmarked, default-weight vertex a.
inline MarkedGraph compose(const MarkedGraph& f, const MarkedGraph& h, int a) {
    if (!f.has_vertex(a) || !h.has_vertex(a))
        throw PreconditionError("composition vertex must be present in both graphs");
    for (const MarkedGraph* g : {&f, &h})
        if (g->loop(a) || g->mark(a) != Mark::Unmarked || !g->default_weights(a))
            throw PreconditionError("composition vertex must be unlooped, unmarked, with default weights");
    for (int v : f.vertices())
        if (v != a && h.has_vertex(v))
            throw PreconditionError("vertex handle sets must be disjoint apart from the shared vertex");
    MarkedGraph out = f;
    out.remove_vertex(a);
    for (int v : h.vertices()) {
        if (v == a)
            continue;
        out.add_vertex_with_handle(v, h.loop(v), h.mark(v));
        out.set_weights(v, h.alpha(v), h.beta(v));
    }
    for (const auto& [x, y] : h.edges())
        if (x != a && y != a)
            out.set_edge(x, y, true);
    for (int x : f.neighbors(a))
        for (int y : h.neighbors(a))
            out.set_edge(x, y, true);
    out.set_free_loops(f.free_loops() + h.free_loops());
    return out;
}

struct CompositionSplit {
    BracketPoly alpha_prime;
    BracketPoly beta_prime;
    BracketPoly gamma;
};

// Elements alpha'(a), beta'(a), gamma with [F * H] = [H'] + gamma [H - a] for
// every valid H, where H' carries the weights (alpha', beta') at a. They are
// recovered from three probes of F:
//   E1 = [F - a], E2 = [F with a-weights (1, 0)], E4 = [F with a-weights (0, 1)],
// which satisfy E1 = alpha' d + beta' + gamma, E2 = alpha' + beta' + gamma d,
// E4 = alpha' + beta' d + gamma.
inline CompositionSplit composition_split(const MarkedGraph& f, int a) {
    if (!f.has_vertex(a))
        throw LookupError("no vertex with handle " + std::to_string(a));
    if (f.loop(a) || f.mark(a) != Mark::Unmarked || !f.default_weights(a))
        throw PreconditionError("composition vertex must be unlooped, unmarked, with default weights");
    const BracketPoly e1 = bracket_recursive(f.without_vertex(a));
    MarkedGraph probe = f;
    probe.set_weights(a, BracketPoly(1), BracketPoly(0));
    const BracketPoly e2 = bracket_recursive(probe);
    probe.set_weights(a, BracketPoly(0), BracketPoly(1));
    const BracketPoly e4 = bracket_recursive(probe);
    const BracketPoly d_plus_2 = BracketPoly::var_d() + BracketPoly(2);
    const BracketPoly d_minus_1 = BracketPoly::var_d() - BracketPoly(1);
    const BracketPoly u = exact_divide(e1 + e2 + e4, d_plus_2);
    CompositionSplit out;
    out.alpha_prime = exact_divide(e1 - u, d_minus_1);
    out.beta_prime = exact_divide(e4 - u, d_minus_1);
    out.gamma = exact_divide(e2 - u, d_minus_1);
    return out;
}

} // namespace markbracket
