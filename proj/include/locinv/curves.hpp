#pragma once

/*
 * Closed formulas and sufficient-condition certifiers for bundles on chains
 * of P^1's and on smooth curves of positive genus.  The chain predicates
 * certify one direction only: a true answer proves the conclusion, a false
 * answer is inconclusive.
 */

#include <algorithm>
#include <string>
#include <vector>

#include "locinv/rational.hpp"

namespace locinv {

enum class CertStatus { Certified, Inconclusive };

inline std::string to_string(CertStatus s) {
    return s == CertStatus::Certified ? "Certified" : "Inconclusive";
}

// ---------------------------------------------------------------------------
// Chains Z_a of a projective lines
// ---------------------------------------------------------------------------

struct ChainData {
    // splitting[i] = non-increasing splitting type of the restriction to the
    // i-th component; conormal_degrees[i][j] = degree of the j-th conormal
    // factor on the i-th component.
    std::vector<std::vector<int>> splitting;
    std::vector<std::vector<int>> conormal_degrees;

    ChainData(std::vector<std::vector<int>> split, std::vector<std::vector<int>> conormal)
        : splitting(std::move(split)), conormal_degrees(std::move(conormal)) {
        if (splitting.empty() || splitting.size() != conormal_degrees.size())
            throw Error("ChainData: need one splitting row and one conormal row per component");
        for (const auto& row : splitting) {
            if (row.empty() || !std::is_sorted(row.begin(), row.end(), std::greater<int>()))
                throw Error("ChainData: splitting rows must be non-increasing");
        }
        for (const auto& row : conormal_degrees)
            if (row.empty()) throw Error("ChainData: empty conormal row");
    }

    int components() const { return static_cast<int>(splitting.size()); }

    // per-component splitting gap eps_i = a_{i,1} - a_{i,r}
    std::vector<int> eps() const {
        std::vector<int> e;
        for (const auto& row : splitting) e.push_back(row.front() - row.back());
        return e;
    }

    // b_i = min_j b_{i,j}
    std::vector<int> b_min() const {
        std::vector<int> b;
        for (const auto& row : conormal_degrees) b.push_back(*std::min_element(row.begin(), row.end()));
        return b;
    }

    bool ample() const {
        for (const auto& row : conormal_degrees)
            for (int d : row)
                if (d <= 0) return false;
        return true;
    }
};

// h^0 of a line bundle on the chain with spanned restriction degrees:
// 1 + sum d_i by Riemann-Roch.
inline long long chain_line_h0(const std::vector<int>& degrees) {
    long long sum = 0;
    for (int d : degrees) {
        if (d < 0) throw NotSpanned("chain_line_h0: degree " + std::to_string(d) + " < 0, bundle not spanned");
        sum += d;
    }
    return 1 + sum;
}

// h^1(Z_a, F) = 0 when every per-component minimum degree is >= -1 and at
// most one of them is negative.
inline bool chain_h1_vanishes(const ChainData& data) {
    int exceptions = 0;
    for (const auto& row : data.splitting) {
        const int low = row.back();
        if (low < -1) return false;
        if (low < 0) ++exceptions;
    }
    return exceptions <= 1;
}

enum class ChainMode {
    PlainA5,      // restriction H^1(formal) -> H^1(Z_a) bijective, bundle itself
    EndFormalA81, // same for End E on the formal neighbourhood
    EndLevelA82,  // same for End E at finite level m
};

// Sufficient conditions relating conormal degrees b_i and splitting gaps
// eps_i.  All three have the shape "f(b_i) >= threshold_i - 1 everywhere and
// f(b_i) >= threshold_i with at most one exception".
inline bool chain_restriction_bijective(const std::vector<int>& eps, const std::vector<int>& b,
                                        ChainMode mode, long long m = 0) {
    if (eps.size() != b.size() || eps.empty())
        throw Error("chain_restriction_bijective: eps and b must have equal positive length");
    if (mode == ChainMode::EndLevelA82 && m < 0) throw Error("chain_restriction_bijective: m >= 0");
    int exceptions = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        long long lhs;
        long long threshold;
        switch (mode) {
            case ChainMode::PlainA5:
                lhs = b[i];
                threshold = eps[i];
                break;
            case ChainMode::EndFormalA81:
                lhs = b[i];
                threshold = 2LL * eps[i];
                break;
            case ChainMode::EndLevelA82:
                lhs = (m + 1) * b[i];
                threshold = 2LL * eps[i];
                break;
            default:
                throw Error("chain_restriction_bijective: unknown mode");
        }
        if (lhs < threshold - 1) return false;
        if (lhs < threshold) ++exceptions;
    }
    return exceptions <= 1;
}

inline bool chain_restriction_bijective(const ChainData& data, ChainMode mode, long long m = 0) {
    return chain_restriction_bijective(data.eps(), data.b_min(), mode, m);
}

// Splitting certificate on the formal neighbourhood: the very same
// inequality set as the End-twisted bijectivity condition.
inline bool chain_formally_split(const std::vector<int>& eps, const std::vector<int>& b) {
    return chain_restriction_bijective(eps, b, ChainMode::EndFormalA81);
}

inline bool chain_formally_split(const ChainData& data) {
    return chain_restriction_bijective(data, ChainMode::EndFormalA81);
}

// ---------------------------------------------------------------------------
// Smooth curves of genus g
// ---------------------------------------------------------------------------

struct GenusContext {
    long long g = 2; // genus
    long long n = 2; // ambient dimension
    long long r = 1; // rank of the bundle
    long long d = 0; // degree of the normal bundle
    std::vector<long long> degrees; // filtration quotient degrees a_1..a_r
};

enum class GenusMode { Exact, UpperBound };

// Level-t contribution to the deformation dimension for a split (Exact) or
// filtered (UpperBound) bundle with a general stable normal bundle:
//   sum_{i,j} max{0, t(d + 2g - 2 + a_i - a_j)/r + 1 - g} * C(t+r-1, t).
// The summands divide by r and need not be integers for r >= 2; the exact
// rational is returned verbatim.
inline Rational gamma_genus_split(const GenusContext& ctx, long long t, GenusMode mode = GenusMode::Exact) {
    (void)mode; // Exact and UpperBound share the same right-hand side
    if (ctx.g < 2) throw Error("gamma_genus_split: requires genus >= 2");
    if (t < 1) throw Error("gamma_genus_split: requires t >= 1");
    if (ctx.r < 1 || static_cast<long long>(ctx.degrees.size()) != ctx.r)
        throw Error("gamma_genus_split: rank must match degree count");
    const Rational binom(binomial(t + ctx.r - 1, t));
    Rational total(0);
    for (long long ai : ctx.degrees)
        for (long long aj : ctx.degrees) {
            Rational term{to_int(t * (ctx.d + 2 * ctx.g - 2 + ai - aj)), to_int(ctx.r)};
            term.canonicalize();
            term += to_int(1 - ctx.g);
            if (term > 0) total += term * binom;
        }
    return total;
}

enum class PairBoundVariant { SameDegree, DegreeReduced };

// Degree reduction a = rx + y, c = min{y, r-y}: the general pair
// (normal bundle, bundle) of total degree a behaves like degrees
// (0, ..., 0, c).
inline std::vector<long long> reduced_degrees(long long a, long long r) {
    if (r < 1) throw Error("reduced_degrees: rank must be positive");
    const long long y = a - r * floor_div(a, r);
    const long long c = std::min(y, r - y);
    std::vector<long long> deg(static_cast<std::size_t>(r), 0);
    deg.back() = c;
    return deg;
}

inline Rational gamma_general_pair_bound(long long g, long long n, long long r, long long d, long long t,
                                         PairBoundVariant variant, long long total_degree = 0) {
    if (n < 2) throw Error("gamma_general_pair_bound: ambient dimension must be >= 2");
    if (g < 2) throw Error("gamma_general_pair_bound: requires genus >= 2");
    if (t < 1) throw Error("gamma_general_pair_bound: requires t >= 1");
    if (variant == PairBoundVariant::SameDegree) {
        Rational term{to_int(t * (d + 2 * g - 2)), to_int(r)};
        term.canonicalize();
        term += to_int(1 - g);
        if (term < 0) term = 0;
        return Rational(to_int(r * r) * binomial(t + r - 1, t)) * term;
    }
    GenusContext ctx{g, n, r, d, reduced_degrees(total_degree, r)};
    return gamma_genus_split(ctx, t, GenusMode::UpperBound);
}

// Level zero: gamma(F, N, 0) = h^1(End F) = r^2 (g-1) + h^0(End F).
inline long long gamma_genus_zero_level(long long r, long long g, long long h0_end) {
    if (r < 1 || g < 1) throw Error("gamma_genus_zero_level: r, g must be positive");
    if (h0_end < 1) throw Error("gamma_genus_zero_level: h^0(End F) >= 1 always");
    return r * r * (g - 1) + h0_end;
}

// Dimension of the moduli of stable bundles of rank r on a genus-g curve.
inline long long moduli_dim(long long r, long long g) {
    if (r < 1 || g < 1) throw Error("moduli_dim: r, g must be positive");
    return r * r * (g - 1) + 1;
}

enum class AlphaRegime { Semistable, Stable, General };

// Sufficient degree conditions for the vanishing of
// alpha(N, t) = h^0(S^t(N) tensor omega_Z) for all t >= 1, which makes
// Pic of the formal neighbourhood inject into Pic Z.
inline bool alpha_vanishes(long long g, long long n, long long d, AlphaRegime regime) {
    if (g < 1 || n < 2) throw Error("alpha_vanishes: requires g >= 1, n >= 2");
    switch (regime) {
        case AlphaRegime::Semistable: return d < (n - 1) * (2 - 2 * g);
        case AlphaRegime::Stable: return d <= (n - 1) * (2 - 2 * g);
        case AlphaRegime::General: return d <= (n - 1) * (1 - g);
    }
    throw Error("alpha_vanishes: unknown regime");
}

// Genus 1 with both the bundle and the normal bundle semi-stable: every
// positive level vanishes, the deformation space is that of the restriction.
inline long long genus1_gamma(long long t) {
    if (t < 1) throw Error("genus1_gamma: requires t >= 1");
    return 0;
}

} // namespace locinv
