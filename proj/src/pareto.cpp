#include "dpmos/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpmos {

Objective restrict_objective(const Objective& o, const std::vector<std::size_t>& pool) {
    Objective r;
    r.values.reserve(pool.size());
    for (std::size_t c : pool) r.values.push_back(o.values.at(c));
    r.local = [f = o.local, pool](std::size_t t, std::size_t i) { return f(t, pool[i]); };
    r.global = o.global;
    return r;
}

void validate_objectives(const std::vector<Objective>& objectives) {
    if (objectives.empty()) throw std::invalid_argument("at least one objective is required");
    const std::size_t n = objectives.front().values.size();
    if (n == 0) throw std::invalid_argument("empty candidate set");
    for (const auto& o : objectives) {
        if (o.values.size() != n) throw std::invalid_argument("objectives disagree on the number of candidates");
        if (!(o.global >= 0)) throw std::invalid_argument("global sensitivity must be nonnegative");
        for (double v : o.values)
            if (std::isnan(v)) throw std::invalid_argument("utility value is NaN");
    }
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: objective count mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] >= b[i])) return false;
    return true;
}

UtilityMatrix utility_matrix(const std::vector<Objective>& objectives) {
    UtilityMatrix u;
    u.reserve(objectives.size());
    for (const auto& o : objectives) u.push_back(o.values);
    return u;
}

std::vector<double> candidate_vector(const UtilityMatrix& u, std::size_t r) {
    std::vector<double> v;
    v.reserve(u.size());
    for (const auto& row : u) v.push_back(row.at(r));
    return v;
}

namespace {

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : t_(n + 1, 0) {}
    void add(std::size_t i) {
        for (++i; i < t_.size(); i += i & (~i + 1)) ++t_[i];
    }
    long prefix(std::size_t n) const {  // entries [0, n)
        long s = 0;
        for (; n > 0; n -= n & (~n + 1)) s += t_[n];
        return s;
    }

private:
    std::vector<long> t_;
};

// For each query q: number of points p with p1 >= q1 and p2 >= q2 (or > in
// both coordinates when strict).
std::vector<long> dominance_counts(const std::vector<double>& p1, const std::vector<double>& p2,
                                   const std::vector<double>& q1, const std::vector<double>& q2, bool strict) {
    const std::size_t n = p1.size();
    std::vector<double> keys(p2);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<std::size_t> pts(n), qs(q1.size());
    std::iota(pts.begin(), pts.end(), 0);
    std::iota(qs.begin(), qs.end(), 0);
    std::sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) { return p1[a] > p1[b]; });
    std::sort(qs.begin(), qs.end(), [&](std::size_t a, std::size_t b) { return q1[a] > q1[b]; });

    Fenwick fw(keys.size());
    std::vector<long> out(q1.size());
    std::size_t next = 0;
    long inserted = 0;
    for (std::size_t q : qs) {
        while (next < n && (strict ? p1[pts[next]] > q1[q] : p1[pts[next]] >= q1[q])) {
            const auto k = std::lower_bound(keys.begin(), keys.end(), p2[pts[next]]) - keys.begin();
            fw.add(static_cast<std::size_t>(k));
            ++inserted;
            ++next;
        }
        const auto cut = strict ? std::upper_bound(keys.begin(), keys.end(), q2[q])
                                : std::lower_bound(keys.begin(), keys.end(), q2[q]);
        out[q] = inserted - fw.prefix(static_cast<std::size_t>(cut - keys.begin()));
    }
    return out;
}

void check_matrix(const UtilityMatrix& u) {
    if (u.empty()) throw std::invalid_argument("at least one objective is required");
    for (const auto& row : u) {
        if (row.size() != u.front().size()) throw std::invalid_argument("ragged utility matrix");
        for (double v : row)
            if (std::isnan(v)) throw std::invalid_argument("utility value is NaN");
    }
}

bool column_dominates(const UtilityMatrix& u, std::size_t a, std::size_t b) {
    for (const auto& row : u)
        if (!(row[a] >= row[b])) return false;
    return true;
}

}  // namespace

std::vector<long> pareto_scores(const UtilityMatrix& u) {
    check_matrix(u);
    const std::size_t n = u.front().size();
    std::vector<long> ps(n, 0);
    if (u.size() == 2) {
        const auto c = dominance_counts(u[0], u[1], u[0], u[1], false);
        for (std::size_t r = 0; r < n; ++r) ps[r] = -(c[r] - 1);
        return ps;
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < n; ++q)
            if (q != r && column_dominates(u, q, r)) --ps[r];
    return ps;
}

ParetoScoreTable pareto_score_table(const UtilityMatrix& u) {
    check_matrix(u);
    const std::size_t n = u.front().size();
    ParetoScoreTable t;
    t.score.assign(n, 0);
    t.dom.resize(n);
    t.ndom.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t q = 0; q < n; ++q) {
            if (q == r) continue;
            (column_dominates(u, q, r) ? t.dom[r] : t.ndom[r]).push_back(q);
        }
        t.score[r] = -static_cast<long>(t.dom[r].size());
    }
    return t;
}

ParetoSensitivity::ParetoSensitivity(const std::vector<Objective>& objectives)
    : obj_(objectives), n_(0), m_(objectives.size()), sums_(objectives.size()) {
    validate_objectives(objectives);
    n_ = objectives.front().values.size();
    for (const auto& o : objectives)
        if (!o.local) throw std::invalid_argument("delta_PS requires a local sensitivity for every objective");
}

const std::vector<double>& ParetoSensitivity::prefix(std::size_t i, std::size_t t) {
    auto& levels = sums_[i];
    while (levels.size() <= t) {
        const std::size_t j = levels.size();
        std::vector<double> s(n_);
        for (std::size_t r = 0; r < n_; ++r) {
            const double d = obj_[i].local(j, r);
            if (!(d >= 0) || !std::isfinite(d))
                throw std::invalid_argument("sensitivity function returned a negative or non-finite value");
            s[r] = (j == 0 ? 0.0 : levels[j - 1][r]) + d;
        }
        levels.push_back(std::move(s));
    }
    return levels[t];
}

long ParetoSensitivity::operator()(std::size_t t, std::size_t r) {
    if (r >= n_) throw std::out_of_range("candidate index out of range");
    std::vector<const std::vector<double>*> s(m_);
    for (std::size_t i = 0; i < m_; ++i) s[i] = &prefix(i, t);
    long count = 0;
    for (std::size_t q = 0; q < n_; ++q) {
        if (q == r) continue;
        bool dominating = true;
        for (std::size_t i = 0; i < m_ && dominating; ++i) dominating = obj_[i].values[q] >= obj_[i].values[r];
        if (dominating) {
            bool can_lose = false;  // ∃i: u_i^-t(q) <= u_i^+t(r)
            for (std::size_t i = 0; i < m_ && !can_lose; ++i)
                can_lose = obj_[i].values[q] - (*s[i])[q] <= obj_[i].values[r] + (*s[i])[r];
            count += can_lose;
        } else {
            bool can_gain = true;  // ∀i: u_i^+t(q) >= u_i^-t(r)
            for (std::size_t i = 0; i < m_ && can_gain; ++i)
                can_gain = obj_[i].values[q] + (*s[i])[q] >= obj_[i].values[r] - (*s[i])[r];
            count += can_gain;
        }
    }
    return count;
}

// |dom⁻| + |ndom⁺| = #{q != r : U(q) >= L(r)} - #{q : L(q) > U(r)} with
// L = u - S, U = u + S taken coordinatewise.
void ParetoSensitivity::level(std::size_t t, std::span<double> out) {
    if (out.size() != n_) throw std::invalid_argument("output span size mismatch");
    std::vector<std::vector<double>> lo(m_, std::vector<double>(n_)), hi(m_, std::vector<double>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
        const auto& s = prefix(i, t);
        for (std::size_t r = 0; r < n_; ++r) {
            lo[i][r] = obj_[i].values[r] - s[r];
            hi[i][r] = obj_[i].values[r] + s[r];
        }
    }
    if (m_ == 2) {
        const auto reach = dominance_counts(hi[0], hi[1], lo[0], lo[1], false);
        const auto escape = dominance_counts(lo[0], lo[1], hi[0], hi[1], true);
        for (std::size_t r = 0; r < n_; ++r) out[r] = static_cast<double>(reach[r] - 1 - escape[r]);
        return;
    }
    for (std::size_t r = 0; r < n_; ++r) {
        long b = 0, a = 0;
        for (std::size_t q = 0; q < n_; ++q) {
            bool up = true, above = true;
            for (std::size_t i = 0; i < m_; ++i) {
                up = up && hi[i][q] >= lo[i][r];
                above = above && lo[i][q] > hi[i][r];
            }
            b += (q != r && up);
            a += above;
        }
        out[r] = static_cast<double>(b - a);
    }
}

std::size_t privpareto_global(const std::vector<Objective>& objectives, GlobalMechanism mech, double epsilon,
                              RandomSource& rng) {
    validate_objectives(objectives);
    const auto ps = pareto_scores(utility_matrix(objectives));
    const std::vector<double> u(ps.begin(), ps.end());
    return run_global_mechanism(mech, u, static_cast<double>(pareto_global_sensitivity(u.size())), epsilon, rng);
}

std::vector<double> privpareto_local_log_weights(const std::vector<Objective>& objectives, double epsilon,
                                                std::size_t window) {
    validate_objectives(objectives);
    const auto ps = pareto_scores(utility_matrix(objectives));
    const std::vector<double> u(ps.begin(), ps.end());
    ParetoSensitivity sens(objectives);
    LevelSensitivity level = [&sens](std::size_t t, std::span<const std::size_t>, std::span<double> out) {
        sens.level(t, out);
    };
    if (window == 0) window = default_window(u.size());
    return local_dampening_log_weights(u, level, epsilon, window);
}

std::size_t privpareto_local(const std::vector<Objective>& objectives, double epsilon, RandomSource& rng,
                             std::size_t window) {
    return sample_log_weights(privpareto_local_log_weights(objectives, epsilon, window), rng);
}

}  // namespace dpmos
