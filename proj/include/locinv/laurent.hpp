#pragma once

/*
 * Multivariate Laurent polynomials over the rationals in one base variable z
 * (integer exponents) and n fiber variables u_1..u_n (non-negative
 * exponents).  These carry section and cocycle data in the two-chart
 * computations: z is the base coordinate, the u_k are the fiber coordinates,
 * and the u-degree of a term is the infinitesimal-neighbourhood level it
 * lives on.
 *
 * Values are immutable after construction and every operation is a pure
 * function, so they are safe to share across threads.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "locinv/errors.hpp"
#include "locinv/rational.hpp"

namespace locinv {

struct Monomial {
    long long z_exp = 0;
    std::vector<int> u_exps; // size n, entries >= 0

    long long u_degree() const {
        return std::accumulate(u_exps.begin(), u_exps.end(), 0LL);
    }
};

// Canonical term order: (u-degree, u_exps lexicographic, z_exp).  The map
// order below is what makes printing and hashing deterministic.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long long da = a.u_degree(), db = b.u_degree();
        if (da != db) return da < db;
        if (a.u_exps != b.u_exps) return a.u_exps < b.u_exps;
        return a.z_exp < b.z_exp;
    }
};

inline bool operator==(const Monomial& a, const Monomial& b) {
    return a.z_exp == b.z_exp && a.u_exps == b.u_exps;
}

class LaurentPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    explicit LaurentPoly(int fiber_count = 0) : n_(fiber_count) {
        if (fiber_count < 0) throw Error("LaurentPoly: negative fiber count");
    }

    static LaurentPoly zero(int n) { return LaurentPoly(n); }

    static LaurentPoly constant(int n, const Rational& c) {
        LaurentPoly p(n);
        p.add_term(Monomial{0, std::vector<int>(n, 0)}, c);
        return p;
    }

    static LaurentPoly monomial(int n, long long z_exp, std::vector<int> u_exps, const Rational& c) {
        if (static_cast<int>(u_exps.size()) != n) throw Error("monomial: u_exps size mismatch");
        for (int e : u_exps)
            if (e < 0) throw Error("monomial: negative u exponent");
        LaurentPoly p(n);
        p.add_term(Monomial{z_exp, std::move(u_exps)}, c);
        return p;
    }

    static LaurentPoly var_z(int n, long long exp = 1) {
        return monomial(n, exp, std::vector<int>(n, 0), Rational(1));
    }

    static LaurentPoly var_u(int n, int k, int exp = 1) {
        if (k < 1 || k > n) throw VariableOutOfRange("u index " + std::to_string(k) + " out of range 1.." + std::to_string(n));
        std::vector<int> ue(n, 0);
        ue[k - 1] = exp;
        return monomial(n, 0, std::move(ue), Rational(1));
    }

    int fiber_count() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // No zero coefficients are ever stored; the term map is the canonical
    // representation of the polynomial.
    void add_term(const Monomial& m, const Rational& c) {
        if (static_cast<int>(m.u_exps.size()) != n_) throw Error("add_term: arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        LaurentPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        LaurentPoly r(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                m.z_exp = ma.z_exp + mb.z_exp;
                m.u_exps.resize(a.n_);
                for (int k = 0; k < a.n_; ++k) m.u_exps[k] = ma.u_exps[k] + mb.u_exps[k];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    friend LaurentPoly operator*(const Rational& c, const LaurentPoly& a) {
        LaurentPoly r(a.n_);
        if (c == 0) return r;
        for (const auto& [m, t] : a.terms_) r.terms_.emplace(m, c * t);
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    long long min_z_exp() const { return extremum_z(true); }
    long long max_z_exp() const { return extremum_z(false); }
    long long z_span() const { return is_zero() ? 0 : max_z_exp() - min_z_exp(); }

    long long max_u_degree() const {
        long long d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.u_degree());
        return d;
    }

    long long min_u_degree() const {
        if (is_zero()) return 0;
        long long d = terms_.begin()->first.u_degree();
        for (const auto& [m, c] : terms_) d = std::min(d, m.u_degree());
        return d;
    }

    // The part of the polynomial visible on the zero section u = 0.
    LaurentPoly restrict_to_zero_section() const {
        LaurentPoly r(n_);
        for (const auto& [m, c] : terms_)
            if (m.u_degree() == 0) r.terms_.emplace(m, c);
        return r;
    }

    bool vanishes_on_zero_section() const { return restrict_to_zero_section().is_zero(); }

    // Restriction to the hypersurface u_2 = ... = u_n = 0, re-indexed to a
    // single fiber variable.
    LaurentPoly restrict_to_first_fiber() const {
        if (n_ < 1) throw Error("restrict_to_first_fiber: no fiber variables");
        LaurentPoly r(1);
        for (const auto& [m, c] : terms_) {
            bool pure = true;
            for (int k = 1; k < n_; ++k)
                if (m.u_exps[k] != 0) { pure = false; break; }
            if (pure) r.terms_.emplace(Monomial{m.z_exp, {m.u_exps.empty() ? 0 : m.u_exps[0]}}, c);
        }
        return r;
    }

private:
    void check_arity(const LaurentPoly& other) const {
        if (n_ != other.n_) throw Error("LaurentPoly arity mismatch");
    }

    long long extremum_z(bool minimum) const {
        if (is_zero()) return 0;
        long long e = terms_.begin()->first.z_exp;
        for (const auto& [m, c] : terms_) e = minimum ? std::min(e, m.z_exp) : std::max(e, m.z_exp);
        return e;
    }

    int n_;
    TermMap terms_;
};

// Chart transition substitution z -> z^{-1}, u_k -> z^{b_k} u_k.  A term
// z^e u^I maps to z^{-e + <I,b>} u^I; the u-degree of every term is
// preserved, so this commutes with u-truncation, and applying it twice with
// the same twists is the identity.
inline LaurentPoly chart_substitute(const LaurentPoly& p, const std::vector<int>& twists) {
    if (static_cast<int>(twists.size()) != p.fiber_count())
        throw Error("chart_substitute: twist vector length must equal fiber count");
    LaurentPoly r(p.fiber_count());
    for (const auto& [m, c] : p.terms()) {
        long long dot = 0;
        for (std::size_t k = 0; k < twists.size(); ++k) dot += static_cast<long long>(m.u_exps[k]) * twists[k];
        Monomial im{-m.z_exp + dot, m.u_exps};
        r.add_term(im, c);
    }
    return r;
}

// Reduction mod I^{m+1}: drop all terms of u-degree > m.
inline LaurentPoly truncate_u(const LaurentPoly& p, long long m) {
    if (m < 0) throw Error("truncate_u: negative level");
    LaurentPoly r(p.fiber_count());
    for (const auto& [mono, c] : p.terms())
        if (mono.u_degree() <= m) r.add_term(mono, c);
    return r;
}

struct LaurentVector {
    int rank = 0;
    std::vector<LaurentPoly> components;

    LaurentVector(int r, int n) : rank(r), components(r, LaurentPoly(n)) {
        if (r <= 0) throw Error("LaurentVector: rank must be positive");
    }

    static LaurentVector from(std::vector<LaurentPoly> comps) {
        if (comps.empty()) throw Error("LaurentVector: empty");
        LaurentVector v(static_cast<int>(comps.size()), comps.front().fiber_count());
        v.components = std::move(comps);
        return v;
    }
};

inline LaurentVector apply_matrix(const std::vector<std::vector<LaurentPoly>>& mat, const LaurentVector& v) {
    const int r = static_cast<int>(mat.size());
    if (r != v.rank) throw Error("apply_matrix: rank mismatch");
    LaurentVector out(r, v.components.front().fiber_count());
    for (int i = 0; i < r; ++i) {
        LaurentPoly acc(v.components.front().fiber_count());
        for (int j = 0; j < r; ++j) acc = acc + mat[i][j] * v.components[j];
        out.components[i] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form.  Grammar:
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := coeff | [coeff '*'] factor ('*' factor)*
//   factor := 'z' ['^' int] | 'u' ['_'] nat ['^' nat]
//   coeff  := nat ['/' nat]
// Whitespace is insignificant; 'u1' and 'u_1' are synonyms.  Signs of terms
// come from the separators, z exponents may be negative.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, int n) : s_(text), n_(n) {}

    LaurentPoly run() {
        LaurentPoly result(n_);
        skip_ws();
        if (eof()) throw SyntaxError("empty polynomial text");
        int sign = 1;
        if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1 : 1;
        for (;;) {
            parse_term(sign, result);
            skip_ws();
            if (eof()) break;
            char c = get();
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else throw SyntaxError(err("expected '+' or '-'", c));
        }
        return result;
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::string err(const std::string& what, char got) const {
        return what + " at position " + std::to_string(pos_) + ", got '" + std::string(1, got) + "'";
    }

    long long parse_nat() {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("expected a number at position " + std::to_string(pos_));
        long long v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (get() - '0');
            if (v > (1LL << 40)) throw SyntaxError("number too large");
        }
        return v;
    }

    long long parse_int() {
        skip_ws();
        long long sign = 1;
        if (!eof() && (peek() == '-' || peek() == '+')) sign = (get() == '-') ? -1 : 1;
        return sign * parse_nat();
    }

    void parse_term(int sign, LaurentPoly& out) {
        skip_ws();
        Rational coeff = make_rational(sign);
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            long long num = parse_nat();
            long long den = 1;
            skip_ws();
            if (!eof() && peek() == '/') {
                get();
                den = parse_nat();
                if (den == 0) throw SyntaxError("zero denominator");
            }
            coeff *= make_rational(num, den);
            skip_ws();
            if (eof() || peek() == '+' || peek() == '-') {
                out.add_term(Monomial{0, std::vector<int>(n_, 0)}, coeff);
                return;
            }
            if (peek() != '*') throw SyntaxError(err("expected '*' after coefficient", peek()));
            get();
        }
        Monomial m{0, std::vector<int>(n_, 0)};
        parse_factor(m);
        for (;;) {
            skip_ws();
            if (!eof() && peek() == '*') {
                get();
                parse_factor(m);
            } else {
                break;
            }
        }
        out.add_term(m, coeff);
    }

    void parse_factor(Monomial& m) {
        skip_ws();
        if (eof()) throw SyntaxError("expected a factor, found end of input");
        char c = get();
        if (c == 'z') {
            long long e = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                get();
                e = parse_int();
            }
            m.z_exp += e;
        } else if (c == 'u') {
            skip_ws();
            if (!eof() && peek() == '_') get();
            long long k = parse_nat();
            if (k < 1 || k > n_)
                throw VariableOutOfRange("fiber variable u" + std::to_string(k) + " out of range 1.." + std::to_string(n_));
            long long e = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                get();
                e = parse_nat();
            }
            m.u_exps[static_cast<std::size_t>(k - 1)] += static_cast<int>(e);
        } else {
            throw SyntaxError(err("expected 'z' or 'u'", c));
        }
    }

    const std::string& s_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline LaurentPoly parse_poly(const std::string& text, int n) {
    return detail::PolyParser(text, n).run();
}

inline std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool neg = c < 0;
        Rational a = abs(c);
        std::string factors;
        if (m.z_exp != 0) {
            factors = "z";
            if (m.z_exp != 1) factors += "^" + std::to_string(m.z_exp);
        }
        for (std::size_t k = 0; k < m.u_exps.size(); ++k) {
            if (m.u_exps[k] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "u" + std::to_string(k + 1);
            if (m.u_exps[k] != 1) factors += "^" + std::to_string(m.u_exps[k]);
        }
        std::string body;
        if (factors.empty()) body = to_string(a);
        else if (a == 1) body = factors;
        else body = to_string(a) + "*" + factors;
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace locinv
