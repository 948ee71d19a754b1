#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "markbracket/errors.hpp"

namespace markbracket {

using Coeff = boost::multiprecision::cpp_int;

// Exponent triple of a monomial A^a B^b d^d.
struct Monomial {
    unsigned a = 0;
    unsigned b = 0;
    unsigned d = 0;
    auto operator<=>(const Monomial&) const = default;
};

// Descending lexicographic order on (a, b, d); map iteration is print order.
struct MonomialOrder {
    bool operator()(const Monomial& x, const Monomial& y) const {
        return std::tie(y.a, y.b, y.d) < std::tie(x.a, x.b, x.d);
    }
};

// Element of Z[A, B, d]. No stored term has coefficient zero.
class BracketPoly {
public:
    using TermMap = std::map<Monomial, Coeff, MonomialOrder>;

    BracketPoly() = default;
    BracketPoly(long value) { add_term({0, 0, 0}, Coeff(value)); }
    explicit BracketPoly(const Coeff& value) { add_term({0, 0, 0}, value); }

    static BracketPoly monomial(unsigned a, unsigned b, unsigned d, Coeff coeff = 1) {
        BracketPoly p;
        p.add_term({a, b, d}, std::move(coeff));
        return p;
    }
    static BracketPoly var_a() { return monomial(1, 0, 0); }
    static BracketPoly var_b() { return monomial(0, 1, 0); }
    static BracketPoly var_d() { return monomial(0, 0, 1); }
    static BracketPoly d_power(unsigned e) { return monomial(0, 0, e); }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Coeff& c) {
        if (c == 0)
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    BracketPoly& operator+=(const BracketPoly& other) {
        for (const auto& [m, c] : other.terms_)
            add_term(m, c);
        return *this;
    }
    BracketPoly& operator-=(const BracketPoly& other) {
        for (const auto& [m, c] : other.terms_)
            add_term(m, -c);
        return *this;
    }
    BracketPoly& operator*=(const BracketPoly& other) {
        BracketPoly result;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : other.terms_)
                result.add_term({m1.a + m2.a, m1.b + m2.b, m1.d + m2.d}, c1 * c2);
        terms_ = std::move(result.terms_);
        return *this;
    }

    friend BracketPoly operator+(BracketPoly x, const BracketPoly& y) { return x += y; }
    friend BracketPoly operator-(BracketPoly x, const BracketPoly& y) { return x -= y; }
    friend BracketPoly operator*(BracketPoly x, const BracketPoly& y) { return x *= y; }
    friend BracketPoly operator-(const BracketPoly& x) {
        BracketPoly out;
        for (const auto& [m, c] : x.terms_)
            out.terms_.emplace(m, -c);
        return out;
    }

    bool operator==(const BracketPoly& other) const = default;

    std::string str(bool spaced = true) const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const bool neg = c < 0;
            const Coeff mag = neg ? Coeff(-c) : c;
            std::string body;
            const bool has_factor = m.a || m.b || m.d;
            if (mag != 1 || !has_factor)
                body = mag.str();
            auto factor = [&body](const char* name, unsigned e) {
                if (!e)
                    return;
                if (!body.empty())
                    body += "*";
                body += name;
                if (e > 1) {
                    body += "^";
                    body += std::to_string(e);
                }
            };
            factor("A", m.a);
            factor("B", m.b);
            factor("d", m.d);
            if (first) {
                if (neg)
                    out += "-";
                first = false;
            } else {
                out += spaced ? (neg ? " - " : " + ") : (neg ? "-" : "+");
            }
            out += body;
        }
        return out;
    }

    // Grammar: terms joined by +/-; a term is an optional integer and optional
    // factors A, B, d, each with optional ^<nonnegative int>, '*' separators
    // optional; whitespace insignificant.
    static BracketPoly parse(std::string_view s) {
        BracketPoly result;
        std::size_t i = 0;
        auto col = [](std::size_t k) { return static_cast<int>(k) + 1; };
        auto skip = [&] {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
                ++i;
        };
        auto read_uint = [&](const char* what) {
            skip();
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError(1, col(i), std::string("expected ") + what);
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                digits += s[i++];
            return digits;
        };

        skip();
        if (i >= s.size())
            throw ParseError(1, col(i), "empty polynomial");
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = (s[i] == '-');
            ++i;
        }
        while (true) {
            skip();
            Coeff coeff = 1;
            bool saw_part = false;
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coeff = Coeff(read_uint("integer"));
                saw_part = true;
            }
            unsigned ea = 0, eb = 0, ed = 0;
            while (true) {
                skip();
                bool after_star = false;
                if (i < s.size() && s[i] == '*') {
                    ++i;
                    after_star = true;
                    skip();
                }
                if (i < s.size() && (s[i] == 'A' || s[i] == 'B' || s[i] == 'd')) {
                    const char var = s[i++];
                    unsigned long e = 1;
                    skip();
                    if (i < s.size() && s[i] == '^') {
                        ++i;
                        skip();
                        if (i < s.size() && s[i] == '-')
                            throw ParseError(1, col(i), "negative exponent not allowed here");
                        e = std::strtoul(read_uint("exponent").c_str(), nullptr, 10);
                    }
                    if (var == 'A')
                        ea += static_cast<unsigned>(e);
                    else if (var == 'B')
                        eb += static_cast<unsigned>(e);
                    else
                        ed += static_cast<unsigned>(e);
                    saw_part = true;
                } else {
                    if (after_star)
                        throw ParseError(1, col(i), "expected factor after '*'");
                    break;
                }
            }
            if (!saw_part)
                throw ParseError(1, col(i), "expected term");
            result.add_term({ea, eb, ed}, negative ? Coeff(-coeff) : coeff);
            skip();
            if (i >= s.size())
                break;
            if (s[i] == '+' || s[i] == '-') {
                negative = (s[i] == '-');
                ++i;
            } else {
                throw ParseError(1, col(i), "expected '+' or '-'");
            }
        }
        return result;
    }

private:
    TermMap terms_;
};

// Multivariate long division in the fixed order A > B > d; the quotient is
// returned only when the division is exact.
inline BracketPoly exact_divide(const BracketPoly& p, const BracketPoly& q) {
    if (q.is_zero())
        throw DivisibilityError("division by zero polynomial");
    BracketPoly remainder = p;
    BracketPoly quotient;
    const auto& [qm, qc] = *q.terms().begin();
    while (!remainder.is_zero()) {
        const auto& [rm, rc] = *remainder.terms().begin();
        if (rm.a < qm.a || rm.b < qm.b || rm.d < qm.d)
            throw DivisibilityError("leading monomial not divisible");
        if (rc % qc != 0)
            throw DivisibilityError("leading coefficient not divisible");
        const BracketPoly t = BracketPoly::monomial(rm.a - qm.a, rm.b - qm.b, rm.d - qm.d, rc / qc);
        quotient += t;
        remainder -= t * q;
    }
    return quotient;
}

// Laurent polynomial in A over Z; stored and printed by descending exponent.
class LaurentA {
public:
    using TermMap = std::map<int, Coeff, std::greater<int>>;

    LaurentA() = default;
    LaurentA(long value) { add_term(0, Coeff(value)); }

    static LaurentA a_power(int e, Coeff coeff = 1) {
        LaurentA out;
        out.add_term(e, std::move(coeff));
        return out;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(int e, const Coeff& c) {
        if (c == 0)
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    LaurentA& operator+=(const LaurentA& other) {
        for (const auto& [e, c] : other.terms_)
            add_term(e, c);
        return *this;
    }
    LaurentA& operator*=(const LaurentA& other) {
        LaurentA result;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : other.terms_)
                result.add_term(e1 + e2, c1 * c2);
        terms_ = std::move(result.terms_);
        return *this;
    }

    friend LaurentA operator+(LaurentA x, const LaurentA& y) { return x += y; }
    friend LaurentA operator*(LaurentA x, const LaurentA& y) { return x *= y; }
    friend LaurentA operator-(const LaurentA& x) {
        LaurentA out;
        for (const auto& [e, c] : x.terms_)
            out.terms_.emplace(e, -c);
        return out;
    }

    // Multiply by A^k.
    LaurentA shifted(int k) const {
        LaurentA out;
        for (const auto& [e, c] : terms_)
            out.terms_.emplace(e + k, c);
        return out;
    }

    bool operator==(const LaurentA& other) const = default;

    std::string str(bool spaced = true) const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            const bool neg = c < 0;
            const Coeff mag = neg ? Coeff(-c) : c;
            std::string body;
            if (mag != 1 || e == 0)
                body = mag.str();
            if (e != 0) {
                if (!body.empty())
                    body += "*";
                body += "A";
                if (e != 1) {
                    body += "^";
                    body += std::to_string(e);
                }
            }
            if (first) {
                if (neg)
                    out += "-";
                first = false;
            } else {
                out += spaced ? (neg ? " - " : " + ") : (neg ? "-" : "+");
            }
            out += body;
        }
        return out;
    }

private:
    TermMap terms_;
};

// Image of p under B -> A^-1 and d -> -A^-2 - A^2.
inline LaurentA reduce_to_laurent(const BracketPoly& p) {
    LaurentA d_image;
    d_image.add_term(-2, -1);
    d_image.add_term(2, -1);
    unsigned max_d = 0;
    for (const auto& [m, c] : p.terms())
        max_d = std::max(max_d, m.d);
    std::vector<LaurentA> d_pow(max_d + 1);
    d_pow[0] = LaurentA(1);
    for (unsigned e = 1; e <= max_d; ++e)
        d_pow[e] = d_pow[e - 1] * d_image;
    LaurentA out;
    for (const auto& [m, c] : p.terms()) {
        LaurentA term = LaurentA::a_power(static_cast<int>(m.a) - static_cast<int>(m.b), c);
        out += term * d_pow[m.d];
    }
    return out;
}

// Renders (-1)^n A^(6*ell - 3*n) * L in the variable t via A = t^(-1/4):
// each A-exponent e maps to the t-exponent -e/4, written in quarters when e is
// not a multiple of 4. Terms appear in ascending t-exponent order.
inline std::string render_t(const LaurentA& input, int n = 0, int ell = 0, bool spaced = true) {
    LaurentA L = input.shifted(6 * ell - 3 * n);
    if (n % 2 != 0)
        L = -L;
    if (L.is_zero())
        return "0";
    std::string out;
    bool first = true;
    // Descending A-exponent is ascending t-exponent.
    for (const auto& [e, c] : L.terms()) {
        const bool neg = c < 0;
        const Coeff mag = neg ? Coeff(-c) : c;
        std::string body;
        if (mag != 1 || e == 0)
            body = mag.str();
        if (e != 0) {
            if (!body.empty())
                body += "*";
            body += "t";
            int num = -e;
            int den = 4;
            const int g = std::gcd(num < 0 ? -num : num, den);
            num /= g;
            den /= g;
            if (den == 1) {
                if (num != 1) {
                    body += "^";
                    body += std::to_string(num);
                }
            } else {
                body += "^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
            }
        }
        if (first) {
            if (neg)
                out += "-";
            first = false;
        } else {
            out += spaced ? (neg ? " - " : " + ") : (neg ? "-" : "+");
        }
        out += body;
    }
    return out;
}

} // namespace markbracket
