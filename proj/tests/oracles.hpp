#pragma once

/*
 * Test-only oracles, kept independent of the library's elimination layout.
 *
 * - brute_h0 sets up the raw chart-matching linear system (all section
 *   coefficients on both charts as unknowns) and returns its kernel
 *   dimension.
 * - euler_rr is the Euler characteristic of the sheaf on Z^(m) from the
 *   degrees of its graded pieces alone; h1 = h0 - chi needs nothing from
 *   the h1 code path.
 * - gamma_cocycle_count literally enumerates the cocycle monomials pair by
 *   pair.
 * - brute_surface_w projects the matched-section kernel of the punctured
 *   surface onto its fiber-pole coordinates.
 *
 * Each brute computation is run at two truncation sizes by the callers to
 * confirm the caps do not bind.
 */

#include <map>
#include <vector>

#include "locinv/cech.hpp"
#include "locinv/invariants.hpp"

namespace oracles {

using namespace locinv;

struct MatchingSystem {
    std::vector<SparseColumn> columns;
    long long unknowns = 0;
    long long negative_fiber_unknowns = 0; // surface case only
    std::vector<std::size_t> nonneg_column_ids;
};

// Transition matrix of a triangular model (diag degrees, coupling class).
inline std::vector<std::vector<LaurentPoly>> model_transition(const detail::TriangularModel& model, int n) {
    const int r = static_cast<int>(model.diag.size());
    std::vector<std::vector<LaurentPoly>> T(r, std::vector<LaurentPoly>(r, LaurentPoly(n)));
    for (int i = 0; i < r; ++i) T[i][i] = LaurentPoly::var_z(n, -model.diag[i]);
    if (!model.p.is_zero()) T[0][r - 1] = T[0][r - 1] + model.p;
    return T;
}

// Chart-matching system on Z^(m): unknowns are the coefficients of the two
// chart sections, equations are the coefficients of T*a - sigma(b) = 0.
inline MatchingSystem build_matching_system(const TotalSpace& space, const detail::TriangularModel& model,
                                            long long m, long long icap) {
    const int n = space.n;
    const int r = static_cast<int>(model.diag.size());
    const auto T = model_transition(model, n);

    std::map<std::tuple<int, long long, std::vector<int>>, long long> row_of;
    auto row_id = [&](int comp, long long e, const std::vector<int>& I) {
        auto key = std::make_tuple(comp, e, I);
        auto [it, inserted] = row_of.emplace(key, static_cast<long long>(row_of.size()));
        return it->second;
    };

    MatchingSystem sys;
    for (long long t = 0; t <= m; ++t) {
        for (const auto& I : detail::compositions(n, t)) {
            for (int c = 0; c < r; ++c) {
                for (long long i = 0; i <= icap; ++i) {
                    // U-chart unknown a_c = z^i u^I: contributes T[rc][c] * z^i u^I.
                    SparseColumn col;
                    for (int rc = 0; rc < r; ++rc) {
                        for (const auto& [tm, tc] : T[rc][c].terms()) {
                            std::vector<int> img(n);
                            long long deg = 0;
                            for (int k = 0; k < n; ++k) {
                                img[k] = tm.u_exps[k] + I[k];
                                deg += img[k];
                            }
                            if (deg > m) continue;
                            col.emplace_back(row_id(rc, tm.z_exp + i, img), tc);
                        }
                    }
                    sys.columns.push_back(std::move(col));
                    ++sys.unknowns;
                }
                for (long long i = 0; i <= icap; ++i) {
                    // V-chart unknown b_c = z'^i u'^I, pulled back to
                    // z^{<I,b>-i} u^I with a minus sign.
                    const long long e = detail::dot(I, space.twists) - i;
                    SparseColumn col;
                    col.emplace_back(row_id(c, e, I), Rational(-1));
                    sys.columns.push_back(std::move(col));
                    ++sys.unknowns;
                }
            }
        }
    }
    return sys;
}

inline long long brute_h0_model(const TotalSpace& space, const detail::TriangularModel& model, long long m,
                                long long icap) {
    const auto sys = build_matching_system(space, model, m, icap);
    return sys.unknowns - sparse_rank(sys.columns);
}

inline long long brute_h0(const TotalSpace& space, const Bundle& bundle, long long m, long long icap) {
    return brute_h0_model(space, detail::model_of(bundle), m, icap);
}

// Euler characteristic of the bundle restricted to Z^(m) from degrees alone.
inline long long euler_rr(const TotalSpace& space, const std::vector<int>& degrees, long long m) {
    long long chi = 0;
    for (long long t = 0; t <= m; ++t)
        for (long long D : sym_power_degrees(space.twists, t))
            for (int a : degrees) chi += a + D + 1;
    return chi;
}

inline long long brute_h1(const TotalSpace& space, const Bundle& bundle, long long m, long long icap) {
    const auto model = detail::model_of(bundle);
    return brute_h0(space, bundle, m, icap) - euler_rr(space, model.diag, m);
}

// Cocycle count behind the closed deformation formula: for each pair with
// a_i - a_j > 1 and each level t, the monomials z^k u^I with |I| = t and
// a_j - a_i + 1 + t <= k <= -1.
inline long long gamma_cocycle_count(int n, const std::vector<int>& degrees) {
    long long count = 0;
    for (int ai : degrees)
        for (int aj : degrees) {
            if (ai - aj <= 1) continue;
            for (long long t = 0;; ++t) {
                const long long klo = aj - ai + 1 + t;
                if (klo > -1) break;
                for (const auto& I : detail::compositions(n, t)) {
                    (void)I;
                    for (long long k = klo; k <= -1; ++k) ++count;
                }
            }
        }
    return count;
}

// Width of the restriction to a surface: full matching system with Laurent
// fiber exponents, kernel projected onto the negative fiber modes.
inline long long brute_surface_w(const TotalSpace& surface, const detail::TriangularModel& model,
                                 long long tcap, long long icap) {
    const int b = surface.twists[0];
    const auto T = model_transition(model, 1);
    const int r = static_cast<int>(model.diag.size());

    std::map<std::tuple<int, long long, long long>, long long> row_of;
    auto row_id = [&](int comp, long long e, long long t) {
        auto [it, inserted] = row_of.emplace(std::make_tuple(comp, e, t), static_cast<long long>(row_of.size()));
        return it->second;
    };

    std::vector<SparseColumn> all_cols;
    std::vector<std::size_t> nonneg_ids;
    long long neg_unknowns = 0, all_unknowns = 0;
    for (long long t = -tcap; t <= tcap; ++t) {
        for (int c = 0; c < r; ++c) {
            for (long long i = 0; i <= icap; ++i) {
                SparseColumn col;
                for (int rc = 0; rc < r; ++rc)
                    for (const auto& [tm, tc] : T[rc][c].terms())
                        col.emplace_back(row_id(rc, tm.z_exp + i, t + tm.u_exps[0]), tc);
                if (t >= 0) nonneg_ids.push_back(all_cols.size());
                else ++neg_unknowns;
                all_cols.push_back(std::move(col));
                ++all_unknowns;
            }
            for (long long i = 0; i <= icap; ++i) {
                SparseColumn col;
                col.emplace_back(row_id(c, static_cast<long long>(b) * t - i, t), Rational(-1));
                if (t >= 0) nonneg_ids.push_back(all_cols.size());
                else ++neg_unknowns;
                all_cols.push_back(std::move(col));
                ++all_unknowns;
            }
        }
    }
    std::vector<SparseColumn> nonneg_cols;
    for (std::size_t id : nonneg_ids) nonneg_cols.push_back(all_cols[id]);

    // dim proj_neg(ker) = dim ker(all) - dim ker(non-negative modes only)
    const long long dim_ker_all = all_unknowns - sparse_rank(all_cols);
    const long long dim_ker_nn = (all_unknowns - neg_unknowns) - sparse_rank(nonneg_cols);
    return dim_ker_all - dim_ker_nn;
}

} // namespace oracles
