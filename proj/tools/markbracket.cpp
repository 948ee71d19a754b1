// Command-line front end for marked-graph brackets, Jones polynomials and the
// link-diagram pipeline. Exit codes: 0 success/pass, 1 usage or parse error,
// 2 verification failure.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "markbracket/bracket.hpp"
#include "markbracket/diagram.hpp"
#include "markbracket/io.hpp"
#include "markbracket/moves.hpp"

namespace {

using namespace markbracket;

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

enum class InputKind { Marked, Labeled, Gauss };

InputKind detect_kind(const std::string& text) {
    if (!looks_like_graph_file(text))
        return InputKind::Gauss;
    return looks_like_labeled_graph(text) ? InputKind::Labeled : InputKind::Marked;
}

// Loads a marked graph; labeled-graph files are converted through mark().
MarkedGraph load_marked(const std::string& path) {
    const std::string text = read_file(path);
    switch (detect_kind(text)) {
    case InputKind::Marked:
        return parse_marked_graph(text);
    case InputKind::Labeled:
        return to_marked(parse_labeled_graph(text));
    case InputKind::Gauss:
        throw UsageError(path + ": Gauss codes are handled by 'interlace', 'oracle' and 'verify'");
    }
    throw UsageError("unreachable");
}

bool tsv = false;

void print_poly(const BracketPoly& p) { std::cout << p.str(!tsv) << "\n"; }

EulerSystem seeded_system(const UniverseGraph& u, unsigned seed) {
    EulerSystem c = euler_system(u);
    if (seed == 0 || u.vertex_count() == 0)
        return c;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, u.vertex_count() - 1);
    for (unsigned k = 0; k < seed; ++k)
        c = kappa_transform(c, pick(rng));
    return c;
}

int run_verify(const std::vector<std::string>& files, unsigned seed) {
    bool all_pass = true;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        all_pass = all_pass && ok;
    };
    for (const std::string& path : files) {
        std::cout << path << ":\n";
        const std::string text = read_file(path);
        const InputKind kind = detect_kind(text);
        MarkedGraph g;
        if (kind == InputKind::Gauss) {
            const GaussCode code = parse_gauss_code(text);
            const UniverseGraph u = build_universe(code);
            if (u.vertex_count() > 12)
                throw CapacityError("verify is limited to 12 crossings");
            const BracketPoly oracle = kauffman_oracle(code);
            std::vector<EulerSystem> systems{euler_system(u)};
            for (unsigned k = 1; k <= 4; ++k)
                systems.push_back(seeded_system(u, seed + k));
            bool brac1 = true, commute = true;
            for (const EulerSystem& c : systems) {
                const MarkedGraph L = interlacement_graph(u, c);
                brac1 = brac1 && (bracket(L) == oracle);
                for (int v = 0; v < u.vertex_count(); ++v) {
                    commute = commute && (interlacement_graph(u, kappa_transform(c, v)) ==
                                          marked_local_complement(L, v));
                }
            }
            check("bracket of interlacement graph equals Kauffman bracket", brac1);
            check("kappa-transform commutes with marked local complementation", commute);
            g = interlacement_graph(u, systems.front());
        } else {
            g = (kind == InputKind::Labeled) ? to_marked(parse_labeled_graph(text)) : parse_marked_graph(text);
            if (g.vertex_count() > 12)
                throw CapacityError("verify is limited to 12 vertices");
        }
        const BracketPoly reference = bracket(g);
        bool mlc_ok = true, toggle_ok = true;
        for (int v : g.vertices()) {
            mlc_ok = mlc_ok && (bracket(marked_local_complement(g, v)) == reference);
            toggle_ok = toggle_ok && (bracket(toggle_loop_and_r(g, v)) == reference);
        }
        check("bracket invariant under marked local complementation", mlc_ok);
        check("bracket invariant under loop/r toggles", toggle_ok);
        check("recursive evaluation agrees with the state sum", bracket_recursive(g) == reference);
    }
    return all_pass ? 0 : 2;
}

MoveSpec parse_move_kind(const std::string& kind, const std::vector<int>& at, bool adjoin_loop,
                         const std::string& adjoin_mark) {
    MoveSpec m;
    m.targets = at;
    if (kind == "omega1-remove")
        m.kind = MoveKind::Omega1Remove;
    else if (kind == "omega1-adjoin") {
        m.kind = MoveKind::Omega1Adjoin;
        m.adjoin_loop = adjoin_loop;
        const auto mark = mark_from_name(adjoin_mark == "none" ? "" : adjoin_mark);
        if (!mark)
            throw UsageError("unknown mark: " + adjoin_mark);
        m.adjoin_mark = *mark;
    } else if (kind == "omega2a")
        m.kind = MoveKind::Omega2a;
    else if (kind == "omega2b")
        m.kind = MoveKind::Omega2b;
    else if (kind == "omega2c")
        m.kind = MoveKind::Omega2c;
    else if (kind == "omega2d")
        m.kind = MoveKind::Omega2d;
    else if (kind == "omega3")
        m.kind = MoveKind::Omega3;
    else
        throw UsageError("unknown move kind: " + kind);
    return m;
}

GraphLinkMoveSpec parse_graphlink_kind(const std::string& kind, const std::vector<int>& at, int adjoin_sign) {
    GraphLinkMoveSpec m;
    m.targets = at;
    m.adjoin_sign = adjoin_sign;
    if (kind == "og1-remove")
        m.kind = GraphLinkMove::Og1Remove;
    else if (kind == "og1-adjoin")
        m.kind = GraphLinkMove::Og1Adjoin;
    else if (kind == "og2")
        m.kind = GraphLinkMove::Og2Remove;
    else if (kind == "og3")
        m.kind = GraphLinkMove::Og3;
    else if (kind == "og4")
        m.kind = GraphLinkMove::Og4;
    else if (kind == "og4p")
        m.kind = GraphLinkMove::Og4Prime;
    else
        throw UsageError("unknown move kind: " + kind);
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"marked-graph bracket and Jones polynomial tool"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::vector<int> at;
    std::string format = "text";
    std::string move_kind;
    std::string adjoin_mark = "none";
    bool adjoin_loop = false;
    int adjoin_sign = 1;
    unsigned euler_seed = 0;
    int budget = 2000;

    auto add_files = [&files](CLI::App* cmd, int n = -1) {
        cmd->add_option("files", files, "input files")->required()->expected(n);
    };
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "tsv"}));
    };

    CLI::App* c_bracket = app.add_subcommand("bracket", "print the bracket polynomial [G]");
    add_files(c_bracket);
    add_format(c_bracket);
    CLI::App* c_reduced = app.add_subcommand("reduced", "print the reduced bracket <G>");
    add_files(c_reduced);
    add_format(c_reduced);
    CLI::App* c_jones = app.add_subcommand("jones", "print the Jones polynomial in A- and t-notation");
    add_files(c_jones);
    add_format(c_jones);
    CLI::App* c_interlace = app.add_subcommand("interlace", "marked interlacement graph of a Gauss code");
    add_files(c_interlace);
    c_interlace->add_option("--euler-seed", euler_seed, "apply this many seeded random kappa-transforms");
    CLI::App* c_oracle = app.add_subcommand("oracle", "diagram-level Kauffman bracket of a Gauss code");
    add_files(c_oracle);
    add_format(c_oracle);
    CLI::App* c_complement = app.add_subcommand("complement", "marked local complement at a vertex");
    add_files(c_complement, 1);
    c_complement->add_option("--at", at, "target vertex")->required()->expected(1);
    CLI::App* c_pivot = app.add_subcommand("pivot", "marked pivot at an edge");
    add_files(c_pivot, 1);
    c_pivot->add_option("--at", at, "target vertices v w")->required()->expected(2);
    CLI::App* c_rsimplify = app.add_subcommand("rsimplify", "remove r-letters, toggling loops");
    add_files(c_rsimplify, 1);
    CLI::App* c_move = app.add_subcommand("move", "apply a Reidemeister or graph-link move");
    add_files(c_move, 1);
    c_move->add_option("--kind", move_kind,
                       "omega1-remove|omega1-adjoin|omega2a|omega2b|omega2c|omega2d|omega3|"
                       "og1-remove|og1-adjoin|og2|og3|og4|og4p")
        ->required();
    c_move->add_option("--at", at, "target vertices");
    c_move->add_flag("--adjoin-loop", adjoin_loop, "adjoin a looped vertex (omega1-adjoin)");
    c_move->add_option("--adjoin-mark", adjoin_mark, "mark for omega1-adjoin: none|u");
    c_move->add_option("--adjoin-sign", adjoin_sign, "sign for og1-adjoin: 1|-1");
    CLI::App* c_equiv = app.add_subcommand("equiv", "bounded Reidemeister-equivalence search");
    add_files(c_equiv, 2);
    c_equiv->add_option("--budget", budget, "search node budget");
    CLI::App* c_verify = app.add_subcommand("verify", "run the invariance checks on the input");
    add_files(c_verify);
    c_verify->add_option("--euler-seed", euler_seed, "seed for the randomized Euler systems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        tsv = (format == "tsv");
        if (app.got_subcommand(c_bracket)) {
            for (const auto& f : files)
                print_poly(bracket_recursive(load_marked(f)));
        } else if (app.got_subcommand(c_reduced)) {
            for (const auto& f : files)
                std::cout << reduced_bracket(load_marked(f)).str(!tsv) << "\n";
        } else if (app.got_subcommand(c_jones)) {
            for (const auto& f : files) {
                const LaurentA v = jones(load_marked(f));
                if (tsv)
                    std::cout << v.str(false) << "\t" << render_t(v, 0, 0, false) << "\n";
                else
                    std::cout << v.str(true) << "\n" << render_t(v) << "\n";
            }
        } else if (app.got_subcommand(c_interlace)) {
            for (const auto& f : files) {
                const UniverseGraph u = build_universe(parse_gauss_code(read_file(f)));
                std::cout << print_marked_graph(interlacement_graph(u, seeded_system(u, euler_seed)),
                                                "interlacement");
            }
        } else if (app.got_subcommand(c_oracle)) {
            for (const auto& f : files)
                print_poly(kauffman_oracle(parse_gauss_code(read_file(f))));
        } else if (app.got_subcommand(c_complement)) {
            std::cout << print_marked_graph(marked_local_complement(load_marked(files[0]), at[0]));
        } else if (app.got_subcommand(c_pivot)) {
            std::cout << print_marked_graph(marked_pivot(load_marked(files[0]), at[0], at[1]));
        } else if (app.got_subcommand(c_rsimplify)) {
            std::cout << print_marked_graph(r_simplify(load_marked(files[0])));
        } else if (app.got_subcommand(c_move)) {
            const std::string text = read_file(files[0]);
            if (move_kind.rfind("og", 0) == 0) {
                if (detect_kind(text) != InputKind::Labeled)
                    throw UsageError("graph-link moves expect a labeled-graph file");
                const LabeledGraph g = parse_labeled_graph(text);
                std::cout << print_labeled_graph(
                    apply_graphlink_move(g, parse_graphlink_kind(move_kind, at, adjoin_sign)));
            } else {
                if (detect_kind(text) != InputKind::Marked)
                    throw UsageError("Reidemeister moves expect a marked-graph file");
                const MarkedGraph g = parse_marked_graph(text);
                std::cout << print_marked_graph(
                    apply_move(g, parse_move_kind(move_kind, at, adjoin_loop, adjoin_mark)));
            }
        } else if (app.got_subcommand(c_equiv)) {
            const Verdict v = equivalent_bounded(load_marked(files[0]), load_marked(files[1]), budget);
            std::cout << verdict_name(v) << "\n";
            return v == Verdict::DistinctByInvariant ? 2 : 0;
        } else if (app.got_subcommand(c_verify)) {
            return run_verify(files, euler_seed);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
