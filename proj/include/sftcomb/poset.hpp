#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "sftcomb/error.hpp"

namespace sftcomb {

// Finite poset given by its covering relation. Element payloads are kept in
// `labels`; `covers` lists pairs (a, b) with a covered by b.
template <typename L>
struct Poset {
    std::vector<L> labels;
    std::vector<std::pair<std::size_t, std::size_t>> covers;

    std::size_t size() const { return labels.size(); }

    std::vector<std::vector<bool>> less_matrix() const
    {
        std::size_t n = size();
        std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
        for (auto [a, b] : covers)
            lt[a][b] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (lt[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (lt[k][j])
                            lt[i][j] = true;
        return lt;
    }

    // True if `rank` is a grading: covers raise it by exactly one.
    bool graded_by(const std::vector<long long>& rank) const
    {
        if (rank.size() != size())
            return false;
        for (auto [a, b] : covers)
            if (rank[b] != rank[a] + 1)
                return false;
        return true;
    }

    std::vector<std::size_t> maximal_elements() const
    {
        std::vector<bool> below(size(), false);
        for (auto [a, b] : covers)
            below[a] = true;
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (!below[i])
                out.push_back(i);
        return out;
    }
};

// Möbius function on the interval [x, y], computed by the recursive sum over
// the closed interval. `lt` must be the strict order matrix.
inline long long mobius(const std::vector<std::vector<bool>>& lt,
                        std::map<std::pair<std::size_t, std::size_t>, long long>& memo,
                        std::size_t x, std::size_t y)
{
    if (x == y)
        return 1;
    require(lt[x][y], "mobius: x not below y");
    auto key = std::make_pair(x, y);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    long long sum = 0;
    for (std::size_t z = 0; z < lt.size(); ++z)
        if (z == x || (lt[x][z] && (z == y || lt[z][y])))
            if (z != y)
                sum += mobius(lt, memo, x, z);
    long long value = -sum;
    memo[key] = value;
    return value;
}

// Eulerian check for a graded poset with ranks given per element, after
// adjoining a bottom and a top element: mu(x, y) = (-1)^(rank y - rank x) on
// every interval. This is the classical sanity property of polytope face
// lattices.
template <typename L>
bool is_eulerian(const Poset<L>& p, const std::vector<long long>& rank)
{
    std::size_t n = p.size();
    std::vector<std::vector<bool>> lt(n + 2, std::vector<bool>(n + 2, false));
    auto base = p.less_matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lt[i][j] = base[i][j];
    std::size_t bot = n, top = n + 1;
    long long rmin = 0, rmax = 0;
    if (n > 0) {
        rmin = *std::min_element(rank.begin(), rank.end());
        rmax = *std::max_element(rank.begin(), rank.end());
    }
    std::vector<long long> r(rank);
    r.push_back(rmin - 1);
    r.push_back(rmax + 1);
    for (std::size_t i = 0; i < n; ++i) {
        lt[bot][i] = true;
        lt[i][top] = true;
    }
    lt[bot][top] = true;
    std::map<std::pair<std::size_t, std::size_t>, long long> memo;
    for (std::size_t x = 0; x < n + 2; ++x)
        for (std::size_t y = 0; y < n + 2; ++y) {
            if (x == y || lt[x][y]) {
                long long expect = ((r[y] - r[x]) % 2 == 0) ? 1 : -1;
                if (x == y)
                    expect = 1;
                if (mobius(lt, memo, x, y) != expect)
                    return false;
            }
        }
    return true;
}

// Exact poset isomorphism by backtracking; intended for small posets in tests
// and acceptance checks.
template <typename L1, typename L2>
bool posets_isomorphic(const Poset<L1>& p, const Poset<L2>& q)
{
    if (p.size() != q.size() || p.covers.size() != q.covers.size())
        return false;
    std::size_t n = p.size();
    auto key = [n](const std::vector<std::pair<std::size_t, std::size_t>>& cov) {
        std::vector<std::pair<int, int>> deg(n, {0, 0});
        for (auto [a, b] : cov) {
            deg[a].first++;   // up-degree
            deg[b].second++;  // down-degree
        }
        return deg;
    };
    auto dp = key(p.covers), dq = key(q.covers);
    std::vector<std::vector<bool>> cp(n, std::vector<bool>(n, false)), cq = cp;
    for (auto [a, b] : p.covers)
        cp[a][b] = true;
    for (auto [a, b] : q.covers)
        cq[a][b] = true;

    std::vector<long long> img(n, -1), used(n, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == n)
            return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || dp[i] != dq[j])
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k) {
                if (cp[i][k] != cq[j][static_cast<std::size_t>(img[k])] ||
                    cp[k][i] != cq[static_cast<std::size_t>(img[k])][j])
                    ok = false;
            }
            if (!ok)
                continue;
            img[i] = static_cast<long long>(j);
            used[j] = 1;
            if (go(i + 1))
                return true;
            img[i] = -1;
            used[j] = 0;
        }
        return false;
    };
    return go(0);
}

}  // namespace sftcomb
