#pragma once

/*
 * Exact rank of sparse rational matrices.
 *
 * The cocycle-reduction and chart-matching systems here are very sparse and
 * full of single-entry columns.  Rank is computed in three exact stages:
 *
 *   1. peel singleton columns: a column whose only live entry sits at row r
 *      is a perfect pivot; it contributes 1 to the rank and removes row r
 *      from every other column (a Gaussian step that introduces no fill);
 *   2. split what remains into connected components over shared rows;
 *   3. run fraction-free (Bareiss) elimination over the integers on each
 *      dense block after clearing denominators, with the one-step exact
 *      division checked rather than assumed.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "locinv/rational.hpp"

namespace locinv {

// One sparse column: (row index, value) pairs.
using SparseColumn = std::vector<std::pair<long long, Rational>>;

namespace detail {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

inline long long bareiss_rank(std::vector<std::vector<Int>>& m) {
    const std::size_t nrows = m.size();
    if (nrows == 0) return 0;
    const std::size_t ncols = m[0].size();
    Int prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t pivot_row = nrows;
        for (std::size_t r = rank; r < nrows; ++r) {
            if (m[r][col] == 0) continue;
            if (pivot_row == nrows || mpz_cmpabs(m[r][col].get_mpz_t(), m[pivot_row][col].get_mpz_t()) < 0)
                pivot_row = r;
        }
        if (pivot_row == nrows) continue;
        std::swap(m[rank], m[pivot_row]);
        const Int pivot = m[rank][col];
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            for (std::size_t c = col + 1; c < ncols; ++c)
                m[r][c] = exact_quotient(m[r][c] * pivot - m[r][col] * m[rank][c], prev);
            m[r][col] = 0;
        }
        prev = pivot;
        ++rank;
    }
    return static_cast<long long>(rank);
}

} // namespace detail

inline long long sparse_rank(const std::vector<SparseColumn>& columns) {
    // Canonicalize: sorted rows, merged duplicates, zero entries dropped.
    std::vector<std::map<long long, Rational>> cols;
    cols.reserve(columns.size());
    for (const auto& col : columns) {
        std::map<long long, Rational> c;
        for (const auto& [row, val] : col) {
            if (val == 0) continue;
            auto [it, inserted] = c.emplace(row, val);
            if (!inserted) {
                it->second += val;
                if (it->second == 0) c.erase(it);
            }
        }
        if (!c.empty()) cols.push_back(std::move(c));
    }
    if (cols.empty()) return 0;

    // Stage 1: singleton peeling.
    std::map<long long, std::vector<std::size_t>> cols_with_row;
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
        for (const auto& [row, val] : cols[ci]) cols_with_row[row].push_back(ci);

    long long rank = 0;
    std::vector<char> consumed(cols.size(), 0);
    std::queue<std::size_t> singletons;
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
        if (cols[ci].size() == 1) singletons.push(ci);
    while (!singletons.empty()) {
        const std::size_t ci = singletons.front();
        singletons.pop();
        if (consumed[ci] || cols[ci].size() != 1) continue;
        consumed[ci] = 1;
        ++rank;
        const long long row = cols[ci].begin()->first;
        for (std::size_t other : cols_with_row[row]) {
            if (other == ci || consumed[other]) continue;
            cols[other].erase(row);
            if (cols[other].size() == 1) singletons.push(other);
            if (cols[other].empty()) consumed[other] = 1; // dependent on pivots
        }
        cols_with_row.erase(row);
    }

    // Stage 2: connected components of the residual matrix.
    std::vector<std::size_t> live;
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
        if (!consumed[ci] && !cols[ci].empty()) live.push_back(ci);
    if (live.empty()) return rank;

    detail::DisjointSet ds(live.size());
    std::map<long long, std::size_t> row_owner;
    for (std::size_t li = 0; li < live.size(); ++li)
        for (const auto& [row, val] : cols[live[li]]) {
            auto [it, inserted] = row_owner.emplace(row, li);
            if (!inserted) ds.unite(li, it->second);
        }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t li = 0; li < live.size(); ++li) components[ds.find(li)].push_back(live[li]);

    // Stage 3: dense fraction-free elimination per component (transposed:
    // one matrix row per sparse column; rank is transpose-invariant).
    for (const auto& [root, members] : components) {
        std::map<long long, std::size_t> row_index;
        for (std::size_t ci : members)
            for (const auto& [row, val] : cols[ci]) row_index.emplace(row, row_index.size());
        std::vector<std::vector<Int>> block(members.size(), std::vector<Int>(row_index.size(), Int(0)));
        for (std::size_t bi = 0; bi < members.size(); ++bi) {
            Int den_lcm(1);
            for (const auto& [row, val] : cols[members[bi]])
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), val.get_den_mpz_t());
            for (const auto& [row, val] : cols[members[bi]]) {
                Rational scaled = val * Rational(den_lcm);
                scaled.canonicalize();
                block[bi][row_index.at(row)] = scaled.get_num();
            }
        }
        rank += detail::bareiss_rank(block);
    }
    return rank;
}

} // namespace locinv
