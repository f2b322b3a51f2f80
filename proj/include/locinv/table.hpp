#pragma once

/*
 * Reproduction of the reference table of invariants (chi, h', w') for
 * rank-2 extension bundles on W_1, W_2, W_3.  The reference values are
 * checked-in constants, independently tabulated, so the reproduction test
 * cannot drift with the computation code; any disagreement between a
 * computed cell and the reference is a build-failing event.
 */

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "locinv/invariants.hpp"

namespace locinv {

struct TableRow {
    std::string j_label;
    std::string p_label;
    int j = 0;
    std::string p_text;                // parseable class, "0" for split rows
    std::array<DimValue, 9> cells{};   // chi,h',w' for W1, then W2, then W3
};

namespace detail {

constexpr long long kInf = -1;

struct FixedRowRef {
    int j;
    const char* p_text;  // nullptr marks an "any p" row (computed with p = 0)
    long long cells[9];
};

// The ten-row reference, with the split row expanded at j = 2..8.
inline const std::vector<FixedRowRef>& fixed_rows_head() {
    static const std::vector<FixedRowRef> rows = {
        {0, nullptr, {0, 0, 0, 0, 0, 0, kInf, 0, 0}},
        {1, nullptr, {0, 0, 1, 0, 0, 0, kInf, 0, 0}},
    };
    return rows;
}

inline const std::vector<FixedRowRef>& split_rows_reference() {
    static const std::vector<FixedRowRef> rows = {
        {2, "0", {1, 1, 3, kInf, 1, 1, kInf, 1, 0}},
        {3, "0", {4, 3, 6, kInf, 2, 2, kInf, 2, 1}},
        {4, "0", {10, 6, 10, kInf, 4, 4, kInf, 3, 2}},
        {5, "0", {20, 10, 15, kInf, 6, 6, kInf, 5, 3}},
        {6, "0", {35, 15, 21, kInf, 9, 9, kInf, 7, 5}},
        {7, "0", {56, 21, 28, kInf, 12, 12, kInf, 9, 7}},
        {8, "0", {84, 28, 36, kInf, 16, 16, kInf, 12, 9}},
    };
    return rows;
}

inline const std::vector<FixedRowRef>& fixed_rows_tail() {
    static const std::vector<FixedRowRef> rows = {
        {3, "u1", {3, 2, 1, kInf, 2, 1, kInf, 2, 1}},
        {4, "z*u1", {6, 3, 1, kInf, 3, 0, kInf, 3, 0}},
        {4, "z^3*u1", {7, 4, 6, kInf, 3, 2, kInf, 3, 1}},
        {4, "z^3*u1^2", {9, 5, 6, kInf, 4, 2, kInf, 3, 2}},
        {5, "z*u1", {10, 4, 1, kInf, 4, 0, kInf, 4, 0}},
        {5, "z^3*u1", {11, 5, 6, kInf, 4, 2, kInf, 4, 1}},
        {5, "z^3*u1^2", {16, 7, 6, kInf, 6, 2, kInf, 5, 2}},
    };
    return rows;
}

inline DimValue ref_cell(long long raw) { return raw == kInf ? DimValue::inf() : DimValue::of(raw); }

} // namespace detail

struct TableResult {
    std::vector<TableRow> rows;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline TableRow compute_table_row(int j, const char* p_text, const CechOptions& opts) {
    TableRow row;
    row.j = j;
    row.j_label = "j=" + std::to_string(j);
    row.p_label = (p_text == nullptr) ? "any" : p_text;
    row.p_text = (p_text == nullptr) ? "0" : p_text;
    for (int i = 1; i <= 3; ++i) {
        const TotalSpace space = TotalSpace::threefold_w(i);
        Bundle bundle = (row.p_text == "0")
                            ? Bundle(SplitBundle(space, {j, -j}))
                            : Bundle(ExtensionBundle(space, j, parse_poly(row.p_text, 2)));
        const InvariantReport rep = invariant_report(space, bundle, opts);
        row.cells[3 * (i - 1) + 0] = rep.chi;
        row.cells[3 * (i - 1) + 1] = DimValue::of(rep.h_prime);
        row.cells[3 * (i - 1) + 2] = DimValue::of(rep.w_prime);
    }
    return row;
}

inline void check_row(const TableRow& row, const std::array<DimValue, 9>& expected,
                      std::vector<std::string>& mismatches) {
    static const char* kCols[9] = {"W1.chi", "W1.h'", "W1.w'", "W2.chi", "W2.h'",
                                   "W2.w'", "W3.chi", "W3.h'", "W3.w'"};
    for (int c = 0; c < 9; ++c) {
        if (!(row.cells[c] == expected[c]))
            mismatches.push_back("row (" + row.j_label + ", p=" + row.p_label + ") " + kCols[c] +
                                 ": computed " + row.cells[c].str() + ", reference " + expected[c].str());
    }
}

} // namespace detail

// Computes the full table: the two small-j rows, the split row expanded at
// the given j values, and the seven explicit extension rows.  Every cell is
// compared against the reference.
inline TableResult run_table(const std::vector<int>& split_j = {2, 3, 4, 5, 6, 7, 8},
                             const CechOptions& opts = {}) {
    TableResult result;
    auto expected_from = [](const detail::FixedRowRef& ref) {
        std::array<DimValue, 9> e;
        for (int c = 0; c < 9; ++c) e[c] = detail::ref_cell(ref.cells[c]);
        return e;
    };

    for (const auto& ref : detail::fixed_rows_head()) {
        TableRow row = detail::compute_table_row(ref.j, ref.p_text, opts);
        detail::check_row(row, expected_from(ref), result.mismatches);
        result.rows.push_back(std::move(row));
    }
    for (int j : split_j) {
        if (j < 2) throw Error("run_table: split row expansion needs j >= 2");
        TableRow row = detail::compute_table_row(j, "0", opts);
        bool found = false;
        for (const auto& ref : detail::split_rows_reference()) {
            if (ref.j == j) {
                detail::check_row(row, expected_from(ref), result.mismatches);
                found = true;
                break;
            }
        }
        if (!found) {
            // Outside the tabulated range, lock against the closed formulas.
            std::array<DimValue, 9> e;
            for (int i = 1; i <= 3; ++i) {
                const SplitFormulaValues f = split_formulas(i, j);
                e[3 * (i - 1) + 0] = f.chi;
                e[3 * (i - 1) + 1] = DimValue::of(f.h_prime);
                e[3 * (i - 1) + 2] = DimValue::of(f.w_prime);
            }
            detail::check_row(row, e, result.mismatches);
        }
        result.rows.push_back(std::move(row));
    }
    for (const auto& ref : detail::fixed_rows_tail()) {
        TableRow row = detail::compute_table_row(ref.j, ref.p_text, opts);
        detail::check_row(row, expected_from(ref), result.mismatches);
        result.rows.push_back(std::move(row));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline std::string table_csv(const TableResult& t) {
    std::string s = "j,p,W1_chi,W1_hprime,W1_wprime,W2_chi,W2_hprime,W2_wprime,W3_chi,W3_hprime,W3_wprime\n";
    for (const auto& row : t.rows) {
        s += std::to_string(row.j) + "," + row.p_label;
        for (const auto& c : row.cells) s += "," + c.str();
        s += "\n";
    }
    return s;
}

inline nlohmann::ordered_json table_json(const TableResult& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        r["j"] = row.j;
        r["p"] = row.p_label;
        const char* keys[9] = {"W1_chi", "W1_hprime", "W1_wprime", "W2_chi", "W2_hprime",
                               "W2_wprime", "W3_chi", "W3_hprime", "W3_wprime"};
        for (int c = 0; c < 9; ++c) r[keys[c]] = dim_to_json(row.cells[c]);
        arr.push_back(std::move(r));
    }
    return arr;
}

inline std::string table_pretty(const TableResult& t) {
    std::ostringstream os;
    os << "                      |    W1           |    W2           |    W3\n";
    os << " j  p                 |  chi   h'   w'  |  chi   h'   w'  |  chi   h'   w'\n";
    os << "----------------------+-----------------+-----------------+----------------\n";
    for (const auto& row : t.rows) {
        std::string p = row.p_label;
        if (p.size() > 16) p = p.substr(0, 16);
        os << " " << row.j << "  " << p << std::string(18 - p.size(), ' ') << "|";
        for (int i = 0; i < 3; ++i) {
            for (int c = 0; c < 3; ++c) {
                const std::string v = row.cells[3 * i + c].str();
                os << std::string(v.size() >= 5 ? 1 : 5 - v.size(), ' ') << v;
            }
            if (i < 2) os << "  |";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace locinv
