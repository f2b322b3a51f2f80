#include <random>

#include "doctest.h"
#include "locinv/laurent.hpp"

using namespace locinv;

namespace {

LaurentPoly random_poly(std::mt19937& rng, int n, int max_terms, long long max_udeg = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> zexp(-6, 6);
    std::uniform_int_distribution<int> uexp(0, static_cast<int>(max_udeg));
    std::uniform_int_distribution<long long> num(-5, 5);
    std::uniform_int_distribution<long long> den(1, 4);
    LaurentPoly p(n);
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        std::vector<int> ue(n);
        for (int v = 0; v < n; ++v) ue[v] = uexp(rng);
        p.add_term(Monomial{zexp(rng), ue}, make_rational(num(rng), den(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("parsing the reference grammar") {
    const LaurentPoly p = parse_poly("z^3*u1", 2);
    REQUIRE(p.term_count() == 1);
    const auto& [m, c] = *p.terms().begin();
    CHECK(m.z_exp == 3);
    CHECK(m.u_exps == std::vector<int>{1, 0});
    CHECK(c == 1);

    CHECK(parse_poly("0", 2).is_zero());

    const LaurentPoly q = parse_poly("z^-2*u1^2 + 1/2*u2", 2);
    REQUIRE(q.term_count() == 2);
    CHECK(q.coefficient(Monomial{-2, {2, 0}}) == 1);
    CHECK(q.coefficient(Monomial{0, {0, 1}}) == make_rational(1, 2));

    // u1 and u_1 are synonyms, whitespace is insignificant
    CHECK(parse_poly(" z ^ 3 * u_1 ", 2) == parse_poly("z^3*u1", 2));
    CHECK(parse_poly("-z + z", 1).is_zero());
    CHECK(parse_poly("2*z*z", 1) == parse_poly("2*z^2", 1));
    CHECK(parse_poly("3/2", 1) == LaurentPoly::constant(1, make_rational(3, 2)));
    CHECK(parse_poly("1 - 2*u1 + u1", 1) == parse_poly("1 - u1", 1));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_poly("", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("2z", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("z+", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("q", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("u1^-2", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("1/0", 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("u3", 2), VariableOutOfRange);
    CHECK_THROWS_AS(parse_poly("u0", 2), VariableOutOfRange);
}

TEST_CASE("parse-print-parse is the identity") {
    std::mt19937 rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const LaurentPoly p = random_poly(rng, n, 6);
        const std::string text = to_string(p);
        const LaurentPoly q = parse_poly(text, n);
        CHECK(q == p);
        CHECK(to_string(q) == text);
    }
}

TEST_CASE("chart substitution") {
    const std::vector<int> b{1, 1};
    CHECK(chart_substitute(LaurentPoly::var_u(2, 1), b) == parse_poly("z*u1", 2));
    CHECK(chart_substitute(LaurentPoly::constant(2, Rational(1)), b) == parse_poly("1", 2));
    CHECK(chart_substitute(parse_poly("z^3*u1", 2), b) == parse_poly("z^-2*u1", 2));
    CHECK_THROWS_AS(chart_substitute(parse_poly("z", 2), {1}), Error);
}

TEST_CASE("chart substitution is an involution and commutes with truncation") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 3);
        std::vector<int> b(n);
        for (int k = 0; k < n; ++k) b[k] = static_cast<int>(rng() % 7) - 3;
        const LaurentPoly p = random_poly(rng, n, 5);
        CHECK(chart_substitute(chart_substitute(p, b), b) == p);
        const long long m = static_cast<long long>(rng() % 5);
        CHECK(truncate_u(chart_substitute(p, b), m) == chart_substitute(truncate_u(p, m), b));
    }
}

TEST_CASE("truncation to a neighbourhood level") {
    CHECK(truncate_u(parse_poly("z^3*u1^2 + u2", 2), 1) == parse_poly("u2", 2));
    const LaurentPoly p = parse_poly("z^3*u1^2 + u2", 2);
    CHECK(truncate_u(p, p.max_u_degree()) == p);
    CHECK(truncate_u(parse_poly("z^5", 2), 0) == parse_poly("z^5", 2));
}

TEST_CASE("ring laws hold exactly on random inputs") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const LaurentPoly p = random_poly(rng, n, 4), q = random_poly(rng, n, 4), r = random_poly(rng, n, 4);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("canonical order: printing is by (u-degree, u-exponents, z-exponent)") {
    const LaurentPoly p = parse_poly("u2 + z^2 + u1 + z^-1*u1^2 + z", 2);
    CHECK(to_string(p) == "z + z^2 + u2 + u1 + z^-1*u1^2");
}

TEST_CASE("vectors carry one polynomial per rank slot") {
    LaurentVector v(2, 2);
    CHECK(v.rank == 2);
    CHECK(v.components.size() == 2);
    v.components[0] = parse_poly("z", 2);
    v.components[1] = parse_poly("u1", 2);
    std::vector<std::vector<LaurentPoly>> m{
        {parse_poly("1", 2), parse_poly("z", 2)},
        {parse_poly("0", 2), parse_poly("1", 2)},
    };
    const LaurentVector w = apply_matrix(m, v);
    CHECK(w.components[0] == parse_poly("z + z*u1", 2));
    CHECK(w.components[1] == parse_poly("u1", 2));
}
