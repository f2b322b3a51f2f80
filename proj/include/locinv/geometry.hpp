#pragma once

/*
 * Local models Tot(O(-b_1) + ... + O(-b_n)) over P^1 and the bundles we
 * compute with.
 *
 * Conventions, fixed once and validated against the reference table:
 *   - The space with twist vector b has two charts (z, u_1..u_n) and
 *     (z', u'_1..u'_n) glued by z' = z^{-1}, u'_k = z^{b_k} u_k, so the
 *     conormal bundle of the zero section is O(b_1) + ... + O(b_n).
 *   - The line bundle L_k of degree k has transition function z^{-k}: a pair
 *     of chart sections (s, s') is a global section iff s'(z', u') = z^{-k} s
 *     on the overlap.
 *   - A rank-2 extension of L_j by L_{-j} with class p has transition matrix
 *     [[z^j, p], [0, z^{-j}]] (first component the sub-bundle L_{-j}).
 */

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "locinv/laurent.hpp"

namespace locinv {

struct TotalSpace {
    int n = 0;               // codimension of the zero section
    std::vector<int> twists; // b_1..b_n

    TotalSpace() = default;
    TotalSpace(int codim, std::vector<int> b) : n(codim), twists(std::move(b)) {
        if (n < 1 || static_cast<int>(twists.size()) != n)
            throw Error("TotalSpace: twist vector length must equal codimension");
    }

    static TotalSpace o_minus_one(int n) { return TotalSpace(n, std::vector<int>(n, 1)); }
    static TotalSpace threefold_w(int i) { return TotalSpace(2, {i, 2 - i}); }
    static TotalSpace surface_d(int i) { return TotalSpace(1, {i}); }

    bool conormal_ample() const {
        return std::all_of(twists.begin(), twists.end(), [](int b) { return b >= 1; });
    }

    int min_twist() const { return *std::min_element(twists.begin(), twists.end()); }
    int max_abs_twist() const {
        int m = 0;
        for (int b : twists) m = std::max(m, std::abs(b));
        return m;
    }

    // W_i detection: n = 2 with twists (i, 2-i).
    std::optional<int> threefold_w_index() const {
        if (n == 2 && twists[1] == 2 - twists[0]) return twists[0];
        return std::nullopt;
    }

    // The hypersurface Tot(O(-b_1)) given by u_2 = ... = u_n = 0.
    TotalSpace first_fiber_surface() const {
        if (n < 1) throw Error("first_fiber_surface: empty space");
        return surface_d(twists[0]);
    }

    std::string name() const {
        if (auto i = threefold_w_index(); i && *i >= 1 && *i <= 3) return "W" + std::to_string(*i);
        if (n == 1) return "D" + std::to_string(twists[0]);
        std::string s = "Tot(";
        for (int k = 0; k < n; ++k) s += (k ? "," : "") + std::string("O(") + std::to_string(-twists[k]) + ")";
        return s + ")";
    }

    friend bool operator==(const TotalSpace& a, const TotalSpace& b) {
        return a.n == b.n && a.twists == b.twists;
    }
};

// "W1".."W3", "D1".."D3" and friends.
inline std::optional<TotalSpace> space_from_name(const std::string& name) {
    if (name.size() == 2 && (name[0] == 'W' || name[0] == 'w') && name[1] >= '1' && name[1] <= '9')
        return TotalSpace::threefold_w(name[1] - '0');
    if (name.size() == 2 && (name[0] == 'D' || name[0] == 'd') && name[1] >= '1' && name[1] <= '9')
        return TotalSpace::surface_d(name[1] - '0');
    return std::nullopt;
}

// Line bundle on a formal neighbourhood, determined by its restriction degree.
struct FormalLineBundle {
    int degree = 0;
};

struct SplitBundle {
    TotalSpace space;
    std::vector<int> degrees; // non-increasing

    SplitBundle(TotalSpace s, std::vector<int> a) : space(std::move(s)), degrees(std::move(a)) {
        if (degrees.empty()) throw Error("SplitBundle: empty degree vector");
        std::sort(degrees.begin(), degrees.end(), std::greater<int>());
    }

    static SplitBundle line(TotalSpace s, int k) { return SplitBundle(std::move(s), {k}); }
    static SplitBundle line(TotalSpace s, FormalLineBundle l) { return line(std::move(s), l.degree); }

    int rank() const { return static_cast<int>(degrees.size()); }
    int max_gap() const { return degrees.front() - degrees.back(); }
};

// Rank-2 extension 0 -> L_{-j} -> E -> L_j -> 0 with class p, transition
// [[z^j, p], [0, z^{-j}]].
struct ExtensionBundle {
    TotalSpace space;
    int j = 0;
    LaurentPoly p;

    ExtensionBundle(TotalSpace s, int split_j, LaurentPoly cls)
        : space(std::move(s)), j(split_j), p(std::move(cls)) {
        if (j < 0) throw Error("ExtensionBundle: j must be non-negative");
        if (p.fiber_count() != space.n) throw Error("ExtensionBundle: class arity must match space");
    }
};

// Internal generalisation: upper-triangular rank-2 transition
// [[z^{-d_sub}, p], [0, z^{-d_quot}]], sub-bundle L_{d_sub}, quotient
// L_{d_quot}.  ExtensionBundle is the case (d_sub, d_quot) = (-j, j).
struct Extension2 {
    TotalSpace space;
    int sub_degree = 0;
    int quot_degree = 0;
    LaurentPoly p;

    Extension2(TotalSpace s, int d_sub, int d_quot, LaurentPoly cls)
        : space(std::move(s)), sub_degree(d_sub), quot_degree(d_quot), p(std::move(cls)) {
        if (p.fiber_count() != space.n) throw Error("Extension2: class arity must match space");
    }
};

inline Extension2 as_extension2(const ExtensionBundle& e) {
    return Extension2(e.space, -e.j, e.j, e.p);
}

using Bundle = std::variant<SplitBundle, ExtensionBundle>;

inline const TotalSpace& bundle_space(const Bundle& b) {
    return std::visit([](const auto& x) -> const TotalSpace& { return x.space; }, b);
}

inline int bundle_rank(const Bundle& b) {
    if (std::holds_alternative<SplitBundle>(b)) return std::get<SplitBundle>(b).rank();
    return 2;
}

// Splitting type of the restriction to the zero section.  For an extension
// this requires the class to vanish on the zero section; a class surviving
// at u = 0 would change the restriction and computing the jumped type would
// need a Birkhoff factorization, which we do not do.
inline std::pair<int, int> splitting_type(const ExtensionBundle& e) {
    if (!e.p.vanishes_on_zero_section())
        throw UnsupportedRestriction("extension class does not vanish on the zero section: " + to_string(e.p.restrict_to_zero_section()));
    return {e.j, -e.j};
}

inline std::vector<int> splitting_degrees(const Bundle& b) {
    if (std::holds_alternative<SplitBundle>(b)) return std::get<SplitBundle>(b).degrees;
    auto [a1, a2] = splitting_type(std::get<ExtensionBundle>(b));
    return {a1, a2};
}

inline std::vector<std::vector<LaurentPoly>> transition_matrix(const Bundle& b) {
    const TotalSpace& sp = bundle_space(b);
    const int n = sp.n;
    if (std::holds_alternative<SplitBundle>(b)) {
        const auto& s = std::get<SplitBundle>(b);
        const int r = s.rank();
        std::vector<std::vector<LaurentPoly>> m(r, std::vector<LaurentPoly>(r, LaurentPoly(n)));
        for (int i = 0; i < r; ++i) m[i][i] = LaurentPoly::var_z(n, -s.degrees[i]);
        return m;
    }
    const auto& e = std::get<ExtensionBundle>(b);
    std::vector<std::vector<LaurentPoly>> m(2, std::vector<LaurentPoly>(2, LaurentPoly(n)));
    m[0][0] = LaurentPoly::var_z(n, e.j);
    m[0][1] = e.p;
    m[1][1] = LaurentPoly::var_z(n, -e.j);
    return m;
}

// ---------------------------------------------------------------------------
// Canonical representative of the extension class over the m-th
// infinitesimal neighbourhood.
//
// Changing the chart frames by upper-unipotent gauges sends
//   p  ~  p - z^{-d_sub} * alpha + z^{-d_quot} * sigma(beta)
// with alpha regular in the U chart and beta regular in the V chart, so the
// coboundary span is exactly the monomials z^e u^I with e >= -d_sub or
// e <= -d_quot + <I,b>.  The class is the projection of p onto the window
//   -d_quot + <I,b> + 1  <=  e  <=  -d_sub - 1
// per u-monomial I of degree <= m, and it vanishes iff the bundle is
// isomorphic over Z^(m) to L_{d_sub} + L_{d_quot}.
// ---------------------------------------------------------------------------

inline LaurentPoly reduce_class(const Extension2& e, long long m, int window_scale = 1) {
    if (m < 0) throw Error("reduce_class: negative level");
    const auto& b = e.space.twists;
    auto survivors = [&](long long window) {
        LaurentPoly r(e.space.n);
        for (const auto& [mono, c] : e.p.terms()) {
            if (mono.u_degree() > m) continue;
            long long dot = 0;
            for (std::size_t k = 0; k < b.size(); ++k) dot += static_cast<long long>(mono.u_exps[k]) * b[k];
            const long long lo = -e.quot_degree + dot + 1;
            const long long hi = -e.sub_degree - 1;
            if (mono.z_exp >= lo && mono.z_exp <= hi && std::abs(mono.z_exp) <= window)
                r.add_term(mono, c);
        }
        return r;
    };
    const long long gap = std::abs(e.quot_degree - e.sub_degree);
    const long long maxd = std::max(std::abs(e.sub_degree), std::abs(e.quot_degree));
    const long long base = gap + maxd + m * e.space.max_abs_twist() + e.p.z_span() + 1;
    const long long window = base * window_scale;
    LaurentPoly once = survivors(window);
    LaurentPoly twice = survivors(2 * window);
    if (!(once == twice)) throw WindowUnstable("reduce_class: window doubling changed the class");
    return once;
}

inline LaurentPoly reduce_extension_class(const ExtensionBundle& e, long long m, int window_scale = 1) {
    return reduce_class(as_extension2(e), m, window_scale);
}

// Replace the class of an extension by any gauge-equivalent one.
inline ExtensionBundle with_class(const ExtensionBundle& e, LaurentPoly q) {
    return ExtensionBundle(e.space, e.j, std::move(q));
}

} // namespace locinv
