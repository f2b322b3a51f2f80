#pragma once

/*
 * The named numerical invariants of rank-2 bundles on the local threefolds
 * W_i = Tot(O(-i) + O(i-2)) and their total spaces generally:
 *
 *   gamma    dimension of the local deformation space, sum over levels t of
 *            h^1(End E tensor S^t(N*)); depends only on the splitting type.
 *   chi      local holomorphic Euler characteristic of the contraction.  In
 *            codimension >= 2 the width summand vanishes identically, so
 *            chi equals h^0(R^1 pi_* E) = dim H^1 of the formal
 *            neighbourhood.
 *   h', w'   partial invariants: h and width of the restriction to the
 *            hypersurface D_i = Tot(O(-i)) inside W_i.
 *
 * Closed forms for split bundles (f_i, g_i below) are evaluated with exact
 * integer division; every divisibility is asserted, never rounded.  Reports
 * for split bundles cross-check the cocycle computation against the closed
 * forms and abort on any disagreement.
 */

#include <string>
#include <vector>

#include "json.hpp"
#include "locinv/cech.hpp"

namespace locinv {

// Deformation-space dimension from the splitting type, as a closed double
// sum: sum over pairs with a_i - a_j > 1 of
// sum_{t=0}^{a_i-a_j-2} (a_i-a_j-1-t) * C(t+n-1, t).
inline long long gamma_closed(int n, const std::vector<int>& degrees) {
    if (n < 1) throw Error("gamma_closed: codimension must be positive");
    long long total = 0;
    for (int ai : degrees)
        for (int aj : degrees) {
            const long long gap = static_cast<long long>(ai) - aj;
            if (gap <= 1) continue;
            for (long long t = 0; t <= gap - 2; ++t)
                total += (gap - 1 - t) * binomial_ll(t + n - 1, t);
        }
    return total;
}

// gamma as the level sum of h^1(End E tensor S^t N*) over the formal
// neighbourhood, from the splitting type alone.
inline DimResult gamma_formal(const TotalSpace& space, const Bundle& bundle, const CechOptions& opts = {}) {
    const std::vector<int> degrees = splitting_degrees(bundle);
    std::vector<int> diffs;
    for (int ai : degrees)
        for (int aj : degrees) diffs.push_back(ai - aj);
    const Certificate cert = space.conormal_ample() ? Certificate::AmpleStabilized
                                                    : Certificate::SplitDegreeArithmetic;
    long long evidence = 2 * (degrees.front() - degrees.back()) + 6 + opts.extra_depth;
    return detail::split_formal_sum(space, diffs, cert, evidence);
}

inline DimResult chi(const TotalSpace& space, const Bundle& bundle, const CechOptions& opts = {}) {
    if (space.n < 2) throw Error("chi: requires codimension >= 2 (width vanishes there)");
    return h1_formal(space, bundle, opts);
}

// Restriction to the hypersurface u_2 = ... = u_n = 0.
inline Bundle restrict_to_surface(const Bundle& bundle) {
    const TotalSpace surface = bundle_space(bundle).first_fiber_surface();
    if (std::holds_alternative<SplitBundle>(bundle))
        return SplitBundle(surface, std::get<SplitBundle>(bundle).degrees);
    const auto& e = std::get<ExtensionBundle>(bundle);
    return ExtensionBundle(surface, e.j, e.p.restrict_to_first_fiber());
}

inline DimResult h_prime_result(const TotalSpace& space, const Bundle& bundle, const CechOptions& opts = {}) {
    if (space.n != 2) throw Error("h_prime: defined for threefold total spaces");
    const Bundle restricted = restrict_to_surface(bundle);
    return h1_formal(bundle_space(restricted), restricted, opts);
}

inline long long h_prime(const TotalSpace& space, const Bundle& bundle, const CechOptions& opts = {}) {
    DimResult r = h_prime_result(space, bundle, opts);
    if (r.value.infinite)
        throw Error("h_prime: infinite on " + space.name() + "; surface twist must be positive");
    return r.value.v;
}

inline long long w_prime(const TotalSpace& space, const Bundle& bundle, const CechOptions& opts = {}) {
    if (space.n != 2) throw Error("w_prime: defined for threefold total spaces");
    const Bundle restricted = restrict_to_surface(bundle);
    return detail::surface_width(bundle_space(restricted), detail::model_of(restricted), opts);
}

// ---------------------------------------------------------------------------
// Closed formulas for split bundles on W_1, W_2, W_3
// ---------------------------------------------------------------------------

inline long long f0_formula(long long j) {
    const Int x = to_int(j);
    return to_long(exact_quotient(x * x * x - x, Int(6)));
}
inline long long f1_formula(long long j) {
    const Int x = to_int(j);
    return to_long(exact_quotient(x * x - x, Int(2)));
}
inline long long g1_formula(long long j) {
    const Int x = to_int(j);
    return to_long(exact_quotient(x * x + x, Int(2)));
}
inline long long f2_formula(long long j) { return (j / 2) * (j - j / 2); }
inline long long g2_formula(long long j) { return (j / 2) * j - (j / 2) * (j / 2); }
inline long long f3_formula(long long j) {
    const long long q = (j + 1) / 3;
    return to_long(exact_quotient(to_int(q) * to_int(2 * j + 1 - 3 * q), Int(2)));
}
inline long long g3_formula(long long j) {
    const long long q = j / 3;
    return to_long(exact_quotient(to_int(q) * to_int(2 * j - 1 - 3 * q), Int(2)));
}

struct SplitFormulaValues {
    DimValue chi;
    long long h_prime = 0;
    long long w_prime = 0;
};

// (chi, h', w') of the split bundle O(j) + O(-j) on W_i.  On W_1 chi is
// f_0(j); on W_2 it is infinite exactly for j >= 2; on W_3 it is infinite
// for every j (the O(1) fiber direction feeds h^1 at every level).
inline SplitFormulaValues split_formulas(int i, long long j) {
    if (j < 0) throw Error("split_formulas: j must be non-negative");
    SplitFormulaValues out;
    switch (i) {
        case 1:
            out.chi = DimValue::of(f0_formula(j));
            out.h_prime = f1_formula(j);
            out.w_prime = g1_formula(j);
            return out;
        case 2:
            out.chi = j >= 2 ? DimValue::inf() : DimValue::of(0);
            out.h_prime = f2_formula(j);
            out.w_prime = g2_formula(j);
            return out;
        case 3:
            out.chi = DimValue::inf();
            out.h_prime = f3_formula(j);
            out.w_prime = g3_formula(j);
            return out;
        default:
            throw Error("split_formulas: i must be 1, 2 or 3");
    }
}

// ---------------------------------------------------------------------------
// Aggregated report
// ---------------------------------------------------------------------------

struct InvariantReport {
    std::string space;
    int j = 0;
    std::string p;
    std::pair<int, int> splitting_type{0, 0};
    DimValue gamma;
    DimValue chi;
    long long h_prime = 0;
    long long w_prime = 0;
    std::string gamma_certificate;
    std::string chi_certificate;
    std::string h_prime_certificate;
    std::string w_prime_certificate = "box_stabilized";
};

namespace detail {

inline bool is_split_equivalent(const Bundle& bundle) {
    if (std::holds_alternative<SplitBundle>(bundle)) return true;
    const auto& e = std::get<ExtensionBundle>(bundle);
    return reduce_extension_class(e, e.p.max_u_degree()).is_zero();
}

} // namespace detail

inline InvariantReport invariant_report(const TotalSpace& space, const Bundle& bundle,
                                        const CechOptions& opts = {}) {
    if (space.n != 2) throw Error("invariant_report: requires a threefold total space");
    if (bundle_rank(bundle) != 2) throw Error("invariant_report: requires a rank-2 bundle");

    InvariantReport rep;
    rep.space = space.name();
    const auto degrees = splitting_degrees(bundle);
    if (degrees[0] + degrees[1] != 0)
        throw Error("invariant_report: first Chern class of the restriction must vanish");
    rep.j = degrees[0];
    rep.splitting_type = {degrees[0], degrees[1]};
    rep.p = std::holds_alternative<ExtensionBundle>(bundle)
                ? to_string(std::get<ExtensionBundle>(bundle).p)
                : "0";

    DimResult g = gamma_formal(space, bundle, opts);
    rep.gamma = g.value;
    rep.gamma_certificate = g.certificate ? to_string(*g.certificate) : "";

    DimResult x = chi(space, bundle, opts);
    rep.chi = x.value;
    rep.chi_certificate = x.certificate ? to_string(*x.certificate) : "";

    DimResult hp = h_prime_result(space, bundle, opts);
    if (hp.value.infinite) throw Error("invariant_report: infinite h' on " + space.name());
    rep.h_prime = hp.value.v;
    rep.h_prime_certificate = hp.certificate ? to_string(*hp.certificate) : "";

    rep.w_prime = w_prime(space, bundle, opts);

    // Split bundles must agree with the closed formulas; any disagreement
    // falsifies the cocycle computation and aborts.
    if (auto wi = space.threefold_w_index(); wi && *wi >= 1 && *wi <= 3 && detail::is_split_equivalent(bundle)) {
        const SplitFormulaValues f = split_formulas(*wi, rep.j);
        if (!(f.chi == rep.chi) || f.h_prime != rep.h_prime || f.w_prime != rep.w_prime)
            throw InternalMismatch("invariant_report: closed form vs cocycle mismatch on " + rep.space +
                                   " j=" + std::to_string(rep.j) + ": formula (" + f.chi.str() + "," +
                                   std::to_string(f.h_prime) + "," + std::to_string(f.w_prime) +
                                   ") vs computed (" + rep.chi.str() + "," + std::to_string(rep.h_prime) +
                                   "," + std::to_string(rep.w_prime) + ")");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization ("inf" encodes the infinite value)
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json dim_to_json(const DimValue& v) {
    if (v.infinite) return "inf";
    return v.v;
}

inline nlohmann::ordered_json to_json(const InvariantReport& r) {
    nlohmann::ordered_json j;
    j["space"] = r.space;
    j["j"] = r.j;
    j["p"] = r.p;
    j["splitting_type"] = {r.splitting_type.first, r.splitting_type.second};
    j["gamma"] = dim_to_json(r.gamma);
    j["chi"] = dim_to_json(r.chi);
    j["h_prime"] = r.h_prime;
    j["w_prime"] = r.w_prime;
    j["certificates"] = {{"gamma", r.gamma_certificate},
                         {"chi", r.chi_certificate},
                         {"h_prime", r.h_prime_certificate},
                         {"w_prime", r.w_prime_certificate}};
    return j;
}

inline std::string report_csv_header() {
    return "space,j,p,splitting_type,gamma,chi,h_prime,w_prime,certificates";
}

inline std::string to_csv_row(const InvariantReport& r) {
    std::string s;
    s += r.space + "," + std::to_string(r.j) + "," + r.p + ",";
    s += std::to_string(r.splitting_type.first) + ";" + std::to_string(r.splitting_type.second) + ",";
    s += r.gamma.str() + "," + r.chi.str() + "," + std::to_string(r.h_prime) + "," + std::to_string(r.w_prime) + ",";
    s += "gamma=" + r.gamma_certificate + ";chi=" + r.chi_certificate + ";h_prime=" + r.h_prime_certificate +
         ";w_prime=" + r.w_prime_certificate;
    return s;
}

} // namespace locinv
