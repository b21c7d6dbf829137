#pragma once

// Straightforward reimplementations used only to cross-check the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

// cand[r][i]: objective i of candidate r
inline std::vector<long> pareto_scores(const std::vector<Vec>& cand) {
    std::vector<long> out;
    for (std::size_t r = 0; r < cand.size(); ++r) {
        std::set<std::size_t> dom;
        for (std::size_t q = 0; q < cand.size(); ++q) {
            if (q == r) continue;
            bool all = true;
            for (std::size_t i = 0; i < cand[r].size(); ++i) all = all && cand[q][i] >= cand[r][i];
            if (all) dom.insert(q);
        }
        out.push_back(-static_cast<long>(dom.size()));
    }
    return out;
}

// delta(i, j, r): sensitivity of objective i at distance j for candidate r
inline long delta_ps(const std::vector<Vec>& cand, const std::function<double(std::size_t, std::size_t, std::size_t)>& delta,
                     std::size_t t, std::size_t r) {
    const std::size_t m = cand[r].size();
    auto width = [&](std::size_t i, std::size_t q) {
        double s = 0;
        for (std::size_t j = 0; j <= t; ++j) s += delta(i, j, q);
        return s;
    };
    std::set<std::size_t> dom_minus, ndom_plus;
    for (std::size_t q = 0; q < cand.size(); ++q) {
        if (q == r) continue;
        bool dominates = true;
        for (std::size_t i = 0; i < m; ++i) dominates = dominates && cand[q][i] >= cand[r][i];
        if (dominates) {
            for (std::size_t i = 0; i < m; ++i)
                if (cand[q][i] - width(i, q) <= cand[r][i] + width(i, r)) {
                    dom_minus.insert(q);
                    break;
                }
        } else {
            bool all = true;
            for (std::size_t i = 0; i < m; ++i) all = all && cand[q][i] + width(i, q) >= cand[r][i] - width(i, r);
            if (all) ndom_plus.insert(q);
        }
    }
    return static_cast<long>(dom_minus.size() + ndom_plus.size());
}

inline Vec softmax(const Vec& u, double delta, double eps) {
    Vec w;
    const double top = *std::max_element(u.begin(), u.end());
    for (double x : u) w.push_back(std::exp(eps * (x - top) / (2 * delta)));
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= z;
    return w;
}

// Permute-and-flip: average over every visiting order of the probability
// that each candidate is the first accepted coin.
inline Vec permute_and_flip(const Vec& u, double delta, double eps) {
    const std::size_t n = u.size();
    const double top = *std::max_element(u.begin(), u.end());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Vec out(n, 0.0);
    double orders = 0;
    do {
        orders += 1;
        double reach = 1;
        for (std::size_t k = 0; k < n && reach > 0; ++k) {
            const double p = std::exp(eps * (u[perm[k]] - top) / (2 * delta));
            out[perm[k]] += reach * p;
            reach *= 1 - p;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& x : out) x /= orders;
    return out;
}

inline double rate(long hits, long misses) { return hits + misses == 0 ? 0.0 : double(hits) / double(hits + misses); }

// Element local sensitivity at distance t of hits/(hits+misses) where one
// step adds or removes a hit or a miss. Ball search over count pairs.
inline double rate_ls(long a, long b, long t) {
    std::set<std::pair<long, long>> ball{{a, b}}, frontier{{a, b}};
    const std::pair<long, long> steps[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (long s = 0; s < t; ++s) {
        std::set<std::pair<long, long>> next;
        for (auto [x, y] : frontier)
            for (auto [dx, dy] : steps)
                if (x + dx >= 0 && y + dy >= 0 && ball.insert({x + dx, y + dy}).second) next.insert({x + dx, y + dy});
        frontier = next;
    }
    double best = 0;
    for (auto [x, y] : ball)
        for (auto [dx, dy] : steps)
            if (x + dx >= 0 && y + dy >= 0) best = std::max(best, std::abs(rate(x, y) - rate(x + dx, y + dy)));
    return best;
}

// Knots b(i) for i = -n..n from a sensitivity sequence, then D by locating
// u between consecutive knots. Strictly positive sequences only.
inline double dampen(double u, const std::function<double(std::size_t)>& delta, std::size_t n) {
    std::vector<double> b(2 * n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        b[n + i] = b[n + i - 1] + delta(i - 1);
        b[n - i] = -b[n + i];
    }
    for (std::size_t k = 0; k + 1 < b.size(); ++k)
        if (b[k] <= u && u <= b[k + 1])
            return (double(k) - double(n)) + (u - b[k]) / (b[k + 1] - b[k]);
    return NAN;
}

inline double metric_c(const std::vector<Vec>& x1, const std::vector<Vec>& x2, bool strict) {
    std::size_t hit = 0;
    for (const auto& b : x2) {
        bool covered = false;
        for (const auto& a : x1) {
            bool ge = true, gt = false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                ge = ge && a[i] >= b[i];
                gt = gt || a[i] > b[i];
            }
            covered = covered || (ge && (!strict || gt));
        }
        hit += covered;
    }
    return double(hit) / double(x2.size());
}

inline double tv(const Vec& p, const Vec& q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s / 2;
}

}  // namespace oracle
