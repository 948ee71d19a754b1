#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "markbracket/errors.hpp"
#include "markbracket/marked_graph.hpp"
#include "markbracket/moves.hpp"
#include "markbracket/poly.hpp"

namespace markbracket {

namespace detail {

struct IoToken {
    std::string value;
    int line;
    int col;
};

// Lines of whitespace-separated tokens; '#' starts a comment.
inline std::vector<std::vector<IoToken>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<IoToken>> lines;
    std::vector<IoToken> current_line;
    std::string current;
    int line = 1, col = 1, tok_col = 1;
    bool in_comment = false;
    auto flush_token = [&] {
        if (!current.empty()) {
            current_line.push_back({current, line, tok_col});
            current.clear();
        }
    };
    auto flush_line = [&] {
        flush_token();
        if (!current_line.empty()) {
            lines.push_back(current_line);
            current_line.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush_line();
            in_comment = false;
            ++line;
            col = 1;
            continue;
        }
        if (!in_comment) {
            if (ch == '#') {
                flush_token();
                in_comment = true;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                flush_token();
            } else {
                if (current.empty())
                    tok_col = col;
                current += ch;
            }
        }
        ++col;
    }
    flush_line();
    return lines;
}

inline int parse_int_token(const IoToken& t, const char* what) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(t.value, &pos);
    } catch (const std::exception&) {
        throw ParseError(t.line, t.col, std::string("expected ") + what);
    }
    if (pos != t.value.size())
        throw ParseError(t.line, t.col, std::string("expected ") + what);
    return value;
}

// Joins tokens up to the next vertex-clause keyword and parses the polynomial.
inline BracketPoly parse_poly_tokens(const std::vector<IoToken>& line, std::size_t& i) {
    static const std::vector<std::string> keywords{"loop", "mark", "alpha", "beta"};
    std::string text;
    const std::size_t start = i;
    while (i < line.size()) {
        bool is_keyword = false;
        for (const auto& kw : keywords)
            if (line[i].value == kw)
                is_keyword = true;
        if (is_keyword)
            break;
        if (!text.empty())
            text += " ";
        text += line[i].value;
        ++i;
    }
    if (text.empty())
        throw ParseError(line[start - 1].line, line[start - 1].col, "expected polynomial");
    try {
        return BracketPoly::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(line[start].line, line[start].col, e.what());
    }
}

} // namespace detail

// Marked-graph text format, one entity per line:
//   graph <name>
//   freeloops <k>
//   vertex <id> [loop] [mark c|cr|u|ur|r] [alpha <poly>] [beta <poly>]
//   edge <id> <id>
inline MarkedGraph parse_marked_graph(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.empty())
        throw ParseError(1, 1, "expected 'graph <name>'");
    if (lines[0][0].value != "graph" || lines[0].size() != 2)
        throw ParseError(lines[0][0].line, lines[0][0].col, "expected 'graph <name>'");
    MarkedGraph g;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const detail::IoToken& head = line[0];
        if (head.value == "freeloops") {
            if (line.size() != 2)
                throw ParseError(head.line, head.col, "expected 'freeloops <k>'");
            const int k = detail::parse_int_token(line[1], "nonnegative count");
            if (k < 0)
                throw ParseError(line[1].line, line[1].col, "free loop count must be nonnegative");
            g.set_free_loops(k);
        } else if (head.value == "vertex") {
            if (line.size() < 2)
                throw ParseError(head.line, head.col, "expected 'vertex <id> ...'");
            const int id = detail::parse_int_token(line[1], "vertex id");
            if (g.has_vertex(id))
                throw ParseError(line[1].line, line[1].col, "duplicate vertex id");
            g.add_vertex_with_handle(id);
            BracketPoly alpha = BracketPoly::var_a();
            BracketPoly beta = BracketPoly::var_b();
            std::size_t i = 2;
            while (i < line.size()) {
                const detail::IoToken& t = line[i];
                if (t.value == "loop") {
                    g.set_loop(id, true);
                    ++i;
                } else if (t.value == "mark") {
                    if (i + 1 >= line.size())
                        throw ParseError(t.line, t.col, "expected mark name");
                    const auto m = mark_from_name(line[i + 1].value);
                    if (!m || *m == Mark::Unmarked)
                        throw ParseError(line[i + 1].line, line[i + 1].col,
                                         "mark must be one of c, cr, u, ur, r");
                    g.set_mark(id, *m);
                    i += 2;
                } else if (t.value == "alpha") {
                    ++i;
                    alpha = detail::parse_poly_tokens(line, i);
                } else if (t.value == "beta") {
                    ++i;
                    beta = detail::parse_poly_tokens(line, i);
                } else {
                    throw ParseError(t.line, t.col, "unknown vertex clause '" + t.value + "'");
                }
            }
            g.set_weights(id, std::move(alpha), std::move(beta));
        } else if (head.value == "edge") {
            if (line.size() != 3)
                throw ParseError(head.line, head.col, "expected 'edge <id> <id>'");
            const int a = detail::parse_int_token(line[1], "vertex id");
            const int b = detail::parse_int_token(line[2], "vertex id");
            if (!g.has_vertex(a))
                throw ParseError(line[1].line, line[1].col, "edge references unknown vertex");
            if (!g.has_vertex(b))
                throw ParseError(line[2].line, line[2].col, "edge references unknown vertex");
            if (a == b)
                throw ParseError(line[1].line, line[1].col, "self-edges are written with the 'loop' clause");
            if (g.adjacent(a, b))
                throw ParseError(head.line, head.col, "duplicate edge");
            g.set_edge(a, b, true);
        } else {
            throw ParseError(head.line, head.col, "unknown directive '" + head.value + "'");
        }
    }
    return g;
}

inline std::string print_marked_graph(const MarkedGraph& g, std::string_view name = "G") {
    std::string out = "graph ";
    out += name;
    out += "\n";
    if (g.free_loops() > 0)
        out += "freeloops " + std::to_string(g.free_loops()) + "\n";
    for (int v : g.vertices()) {
        out += "vertex " + std::to_string(v);
        if (g.loop(v))
            out += " loop";
        if (g.mark(v) != Mark::Unmarked)
            out += std::string(" mark ") + mark_name(g.mark(v));
        if (!g.default_weights(v)) {
            out += " alpha " + g.alpha(v).str(false);
            out += " beta " + g.beta(v).str(false);
        }
        out += "\n";
    }
    for (const auto& [a, b] : g.edges())
        out += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

// Labeled-graph text format, same framing:
//   graph <name>
//   lvertex <id> <0|1> <+|->
//   edge <id> <id>
inline LabeledGraph parse_labeled_graph(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.empty())
        throw ParseError(1, 1, "expected 'graph <name>'");
    if (lines[0][0].value != "graph" || lines[0].size() != 2)
        throw ParseError(lines[0][0].line, lines[0][0].col, "expected 'graph <name>'");
    LabeledGraph g;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const detail::IoToken& head = line[0];
        if (head.value == "lvertex") {
            if (line.size() != 4)
                throw ParseError(head.line, head.col, "expected 'lvertex <id> <0|1> <+|->'");
            const int id = detail::parse_int_token(line[1], "vertex id");
            if (g.has_vertex(id))
                throw ParseError(line[1].line, line[1].col, "duplicate vertex id");
            const int a = detail::parse_int_token(line[2], "0 or 1");
            if (a != 0 && a != 1)
                throw ParseError(line[2].line, line[2].col, "first label coordinate must be 0 or 1");
            int sign = 0;
            if (line[3].value == "+")
                sign = 1;
            else if (line[3].value == "-")
                sign = -1;
            else
                throw ParseError(line[3].line, line[3].col, "second label coordinate must be + or -");
            g.add_vertex_with_handle(id, a, sign);
        } else if (head.value == "edge") {
            if (line.size() != 3)
                throw ParseError(head.line, head.col, "expected 'edge <id> <id>'");
            const int a = detail::parse_int_token(line[1], "vertex id");
            const int b = detail::parse_int_token(line[2], "vertex id");
            if (!g.has_vertex(a))
                throw ParseError(line[1].line, line[1].col, "edge references unknown vertex");
            if (!g.has_vertex(b))
                throw ParseError(line[2].line, line[2].col, "edge references unknown vertex");
            if (a == b)
                throw ParseError(line[1].line, line[1].col, "labeled graphs are loopless");
            if (g.adjacent(a, b))
                throw ParseError(head.line, head.col, "duplicate edge");
            g.set_edge(a, b, true);
        } else {
            throw ParseError(head.line, head.col, "unknown directive '" + head.value + "'");
        }
    }
    return g;
}

inline std::string print_labeled_graph(const LabeledGraph& g, std::string_view name = "G") {
    std::string out = "graph ";
    out += name;
    out += "\n";
    for (int v : g.vertices()) {
        const LabeledVertex l = g.label(v);
        out += "lvertex " + std::to_string(v) + " " + std::to_string(l.a) + " " + (l.sign > 0 ? "+" : "-") + "\n";
    }
    for (const auto& [a, b] : g.edges())
        out += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

// A graph file begins with 'graph'; a labeled file also contains 'lvertex'.
inline bool looks_like_graph_file(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    return !lines.empty() && lines[0][0].value == "graph";
}

inline bool looks_like_labeled_graph(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.empty() || lines[0][0].value != "graph")
        return false;
    for (const auto& line : lines)
        if (line[0].value == "lvertex")
            return true;
    return false;
}

} // namespace markbracket
