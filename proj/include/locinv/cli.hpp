#pragma once

/*
 * Command-line front end.  Subcommands:
 *
 *   invariants   full report (splitting type, gamma, chi, h', w') for one
 *                rank-2 bundle given by --space, --j and --p
 *   table        the reference table, recomputed and locked cell by cell;
 *                disagreement exits with code 2
 *   gamma        deformation-space dimension from a splitting type
 *   genus        positive-genus formula evaluators
 *   chain        sufficient-condition certifiers for chains of P^1's
 *   formulas     closed split-bundle formulas on W_1..W_3
 *
 * Output is byte-stable across runs: term order, key order and row order are
 * all canonical, and nothing here is randomized.
 */

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "locinv/curves.hpp"
#include "locinv/table.hpp"

namespace locinv {

namespace cli_detail {

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) {
        if (cur.empty()) throw Error("empty entry in integer list '" + text + "'");
        out.push_back(std::stoi(cur));
    }
    if (out.empty()) throw Error("empty integer list");
    return out;
}

inline TotalSpace resolve_space(const std::string& name, const std::string& twists_text) {
    if (!twists_text.empty()) {
        const auto twists = parse_int_list(twists_text);
        return TotalSpace(static_cast<int>(twists.size()), twists);
    }
    if (auto sp = space_from_name(name)) return *sp;
    throw Error("unknown space '" + name + "' (use W1..W3, D1..D3 or --twists)");
}

inline void print_report_pretty(const InvariantReport& r, std::ostream& out) {
    out << "space:          " << r.space << "\n";
    out << "j:              " << r.j << "\n";
    out << "p:              " << r.p << "\n";
    out << "splitting type: (" << r.splitting_type.first << ", " << r.splitting_type.second << ")\n";
    out << "gamma:          " << r.gamma.str() << "  [" << r.gamma_certificate << "]\n";
    out << "chi:            " << r.chi.str() << "  [" << r.chi_certificate << "]\n";
    out << "h':             " << r.h_prime << "  [" << r.h_prime_certificate << "]\n";
    out << "w':             " << r.w_prime << "  [" << r.w_prime_certificate << "]\n";
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariants of holomorphic bundles on neighbourhoods of rational curves"};
    app.require_subcommand(1);

    // --- invariants ---------------------------------------------------
    auto* inv = app.add_subcommand("invariants", "invariant report for one bundle");
    std::string inv_space = "W1", inv_twists, inv_p = "0", inv_format = "pretty";
    int inv_j = 0;
    CechOptions inv_opts;
    inv->add_option("--space", inv_space, "space name (W1..W3)");
    inv->add_option("--twists", inv_twists, "explicit twist vector, e.g. 1,1");
    inv->add_option("--j", inv_j, "splitting parameter j >= 0")->required();
    inv->add_option("--p", inv_p, "extension class, e.g. \"z^3*u1^2\"");
    inv->add_option("--depth", inv_opts.extra_depth, "extra levels beyond the stabilization policy");
    inv->add_option("--window-scale", inv_opts.window_scale, "z-window multiplier (robustness knob)");
    inv->add_option("--box-scale", inv_opts.box_scale, "w' truncation box multiplier");
    inv->add_option("--format", inv_format, "pretty|json|csv")->check(CLI::IsMember({"pretty", "json", "csv"}));

    // --- table --------------------------------------------------------
    auto* tab = app.add_subcommand("table", "reproduce the reference invariant table");
    std::string tab_split_j = "2,3,4,5,6,7,8", tab_format = "csv";
    CechOptions tab_opts;
    tab->add_option("--split-j", tab_split_j, "j values at which to expand the split row");
    tab->add_option("--depth", tab_opts.extra_depth, "extra levels beyond the stabilization policy");
    tab->add_option("--window-scale", tab_opts.window_scale, "z-window multiplier");
    tab->add_option("--box-scale", tab_opts.box_scale, "w' truncation box multiplier");
    tab->add_option("--format", tab_format, "csv|json|pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));

    // --- gamma ----------------------------------------------------------
    auto* gam = app.add_subcommand("gamma", "deformation-space dimension from a splitting type");
    int gam_n = 2;
    std::string gam_type, gam_space, gam_twists;
    gam->add_option("--n", gam_n, "codimension of the zero section")->required();
    gam->add_option("--type", gam_type, "splitting type, e.g. 2,-2")->required();
    gam->add_option("--space", gam_space, "also evaluate the level sum on this space and cross-check");
    gam->add_option("--twists", gam_twists, "twist vector of the cross-check space, e.g. 1,1,1");

    // --- genus ----------------------------------------------------------
    auto* gen = app.add_subcommand("genus", "formulas for curves of positive genus");
    long long gen_g = 2, gen_n = 2, gen_r = 1, gen_d = 0, gen_t = 1, gen_h0end = 1, gen_total = 0;
    std::string gen_a, gen_bound, gen_alpha;
    bool gen_moduli = false, gen_zero = false, gen_genus1 = false, gen_upper = false;
    gen->add_option("--g", gen_g, "genus");
    gen->add_option("--n", gen_n, "ambient dimension");
    gen->add_option("--r", gen_r, "rank");
    gen->add_option("--d", gen_d, "degree of the normal bundle");
    gen->add_option("--t", gen_t, "level t >= 1");
    gen->add_option("--a", gen_a, "filtration degrees, e.g. 0,0");
    gen->add_option("--bound", gen_bound, "general-pair bound: same|reduced")->check(CLI::IsMember({"same", "reduced"}));
    gen->add_option("--total-degree", gen_total, "total degree a for --bound reduced");
    gen->add_option("--alpha", gen_alpha, "alpha-vanishing regime: semistable|stable|general")
        ->check(CLI::IsMember({"semistable", "stable", "general"}));
    gen->add_flag("--zero-level", gen_zero, "level-zero dimension r^2(g-1)+h0_end");
    gen->add_option("--h0-end", gen_h0end, "h^0(End F) for --zero-level");
    gen->add_flag("--moduli-dim", gen_moduli, "dimension of the stable moduli, r^2(g-1)+1");
    gen->add_flag("--genus1", gen_genus1, "genus-1 semi-stable rigidity (always 0 for t >= 1)");
    gen->add_flag("--upper", gen_upper, "label the split formula as an upper bound for filtered bundles");

    // --- chain ----------------------------------------------------------
    auto* cha = app.add_subcommand("chain", "certifiers for chains of projective lines");
    std::string cha_eps, cha_b, cha_mode, cha_rows, cha_degrees;
    long long cha_m = 0;
    cha->add_option("--eps", cha_eps, "per-component splitting gaps, e.g. 0,1");
    cha->add_option("--b", cha_b, "per-component minimal conormal degrees");
    cha->add_option("--mode", cha_mode, "a5|a81|a82|a6")->check(CLI::IsMember({"a5", "a81", "a82", "a6"}));
    cha->add_option("--m", cha_m, "level for mode a82");
    cha->add_option("--rows", cha_rows, "splitting rows for --h1-vanishes, e.g. \"0,0;0,-1\"");
    cha->add_option("--h0-degrees", cha_degrees, "restriction degrees of a spanned line bundle");

    // --- formulas -------------------------------------------------------
    auto* frm = app.add_subcommand("formulas", "closed split-bundle formulas on W_i");
    int frm_i = 1;
    long long frm_j = 0;
    frm->add_option("--i", frm_i, "space index 1..3")->required();
    frm->add_option("--j", frm_j, "splitting parameter")->required();

    // CLI11 parses argv-style input.
    std::vector<const char*> argv;
    argv.push_back("locinv");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (inv->parsed()) {
            const TotalSpace space = cli_detail::resolve_space(inv_space, inv_twists);
            if (space.n != 2) throw Error("invariants: expected a threefold total space (n = 2)");
            if (inv_j < 0) throw Error("invariants: j must be non-negative");
            const LaurentPoly p = parse_poly(inv_p, space.n);
            Bundle bundle = p.is_zero() ? Bundle(SplitBundle(space, {inv_j, -inv_j}))
                                        : Bundle(ExtensionBundle(space, inv_j, p));
            const InvariantReport rep = invariant_report(space, bundle, inv_opts);
            if (inv_format == "json") out << to_json(rep).dump(2) << "\n";
            else if (inv_format == "csv") out << report_csv_header() << "\n" << to_csv_row(rep) << "\n";
            else cli_detail::print_report_pretty(rep, out);
            return 0;
        }

        if (tab->parsed()) {
            const TableResult t = run_table(cli_detail::parse_int_list(tab_split_j), tab_opts);
            if (tab_format == "json") out << table_json(t).dump(2) << "\n";
            else if (tab_format == "pretty") out << table_pretty(t);
            else out << table_csv(t);
            if (!t.ok()) {
                for (const auto& m : t.mismatches) err << "table mismatch: " << m << "\n";
                return 2;
            }
            return 0;
        }

        if (gam->parsed()) {
            const auto type = cli_detail::parse_int_list(gam_type);
            const long long closed = gamma_closed(gam_n, type);
            out << closed << "\n";
            if (!gam_space.empty() || !gam_twists.empty()) {
                const TotalSpace space = cli_detail::resolve_space(gam_space, gam_twists);
                const DimResult formal = gamma_formal(space, Bundle(SplitBundle(space, type)));
                out << "level sum on " << space.name() << ": " << formal.value.str();
                if (formal.certificate) out << "  [" << to_string(*formal.certificate) << "]";
                out << "\n";
                if (space == TotalSpace::o_minus_one(space.n) && !(formal.value == DimValue::of(closed)))
                    throw InternalMismatch("gamma: closed form and level sum disagree");
            }
            return 0;
        }

        if (gen->parsed()) {
            if (gen_moduli) {
                out << moduli_dim(gen_r, gen_g) << "\n";
            } else if (gen_zero) {
                out << gamma_genus_zero_level(gen_r, gen_g, gen_h0end) << "\n";
            } else if (gen_genus1) {
                out << genus1_gamma(gen_t) << "\n";
            } else if (!gen_alpha.empty()) {
                const AlphaRegime regime = gen_alpha == "semistable" ? AlphaRegime::Semistable
                                           : gen_alpha == "stable"   ? AlphaRegime::Stable
                                                                     : AlphaRegime::General;
                out << (alpha_vanishes(gen_g, gen_n, gen_d, regime) ? "Certified" : "Inconclusive") << "\n";
            } else if (!gen_bound.empty()) {
                const Rational v = gamma_general_pair_bound(
                    gen_g, gen_n, gen_r, gen_d, gen_t,
                    gen_bound == "same" ? PairBoundVariant::SameDegree : PairBoundVariant::DegreeReduced,
                    gen_total);
                out << to_string(v) << (is_integer(v) ? "" : "  [non-integral]") << "\n";
            } else {
                if (gen_a.empty()) throw Error("genus: provide --a degrees (or one of the flag modes)");
                const auto ints = cli_detail::parse_int_list(gen_a);
                GenusContext ctx{gen_g, gen_n, gen_r, gen_d, std::vector<long long>(ints.begin(), ints.end())};
                const Rational v = gamma_genus_split(ctx, gen_t, gen_upper ? GenusMode::UpperBound : GenusMode::Exact);
                out << to_string(v) << (is_integer(v) ? "" : "  [non-integral]") << "\n";
            }
            return 0;
        }

        if (cha->parsed()) {
            if (!cha_degrees.empty()) {
                out << chain_line_h0(cli_detail::parse_int_list(cha_degrees)) << "\n";
                return 0;
            }
            if (!cha_rows.empty()) {
                std::vector<std::vector<int>> rows;
                std::string part;
                std::istringstream is(cha_rows);
                while (std::getline(is, part, ';')) rows.push_back(cli_detail::parse_int_list(part));
                ChainData data(rows, std::vector<std::vector<int>>(rows.size(), {1}));
                out << (chain_h1_vanishes(data) ? "Certified" : "Inconclusive") << "\n";
                return 0;
            }
            if (cha_mode.empty()) throw Error("chain: provide --mode with --eps/--b, or --rows, or --h0-degrees");
            const auto eps = cli_detail::parse_int_list(cha_eps);
            const auto b = cli_detail::parse_int_list(cha_b);
            bool verdict;
            if (cha_mode == "a5") verdict = chain_restriction_bijective(eps, b, ChainMode::PlainA5);
            else if (cha_mode == "a81") verdict = chain_restriction_bijective(eps, b, ChainMode::EndFormalA81);
            else if (cha_mode == "a82") verdict = chain_restriction_bijective(eps, b, ChainMode::EndLevelA82, cha_m);
            else verdict = chain_formally_split(eps, b);
            out << (verdict ? "Certified" : "Inconclusive") << "\n";
            return 0;
        }

        if (frm->parsed()) {
            const SplitFormulaValues f = split_formulas(frm_i, frm_j);
            out << "chi=" << f.chi.str() << " h_prime=" << f.h_prime << " w_prime=" << f.w_prime << "\n";
            return 0;
        }
    } catch (const InternalMismatch& e) {
        err << "internal mismatch: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace locinv
