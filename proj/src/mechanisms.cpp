#include "dpmos/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dpmos {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_candidates(std::span<const double> u) {
    if (u.empty()) throw std::invalid_argument("selection over an empty candidate set");
    for (double v : u)
        if (std::isnan(v)) throw std::invalid_argument("utility value is NaN");
}

// false when delta_u == 0 and all utilities are equal (degenerate uniform case)
bool scaled(std::span<const double> u, double delta_u, double epsilon) {
    check_candidates(u);
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (!(delta_u >= 0) || !std::isfinite(delta_u))
        throw std::invalid_argument("sensitivity must be finite and nonnegative");
    if (delta_u > 0) return true;
    if (std::adjacent_find(u.begin(), u.end(), std::not_equal_to<>()) != u.end())
        throw std::invalid_argument("zero sensitivity with unequal utilities");
    return false;
}

}  // namespace

std::string to_string(GlobalMechanism m) {
    switch (m) {
        case GlobalMechanism::exponential: return "exponential";
        case GlobalMechanism::permute_and_flip: return "permute_and_flip";
        case GlobalMechanism::rnm_laplace: return "rnm_laplace";
        case GlobalMechanism::rnm_exponential: return "rnm_exponential";
        case GlobalMechanism::rnm_gumbel: return "rnm_gumbel";
    }
    return "?";
}

GlobalMechanism parse_global_mechanism(const std::string& name) {
    for (auto m : {GlobalMechanism::exponential, GlobalMechanism::permute_and_flip, GlobalMechanism::rnm_laplace,
                   GlobalMechanism::rnm_exponential, GlobalMechanism::rnm_gumbel})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown mechanism '" + name + "'");
}

std::size_t sample_log_weights(std::span<const double> log_weights, RandomSource& rng) {
    const std::size_t n = log_weights.size();
    if (n == 0) throw std::invalid_argument("sampling from an empty candidate set");
    const double u = rng.uniform();
    std::vector<std::size_t> top;
    double m = -inf;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = log_weights[i];
        if (std::isnan(l)) throw std::invalid_argument("log weight is NaN");
        if (l == inf) top.push_back(i);
        else m = std::max(m, l);
    }
    if (!top.empty()) return top[static_cast<std::size_t>(u * static_cast<double>(top.size()))];
    if (m == -inf) return static_cast<std::size_t>(u * static_cast<double>(n));

    std::vector<double> w(n);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::exp(log_weights[i] - m));
    const double target = u * total;
    double cum = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] <= 0) continue;
        cum += w[i];
        last = i;
        if (target < cum) return i;
    }
    return last;
}

std::vector<double> normalized_probabilities(std::span<const double> log_weights) {
    const std::size_t n = log_weights.size();
    std::vector<double> p(n, 0.0);
    std::size_t tops = 0;
    double m = -inf;
    for (double l : log_weights) {
        if (l == inf) ++tops;
        else m = std::max(m, l);
    }
    if (tops > 0) {
        for (std::size_t i = 0; i < n; ++i)
            if (log_weights[i] == inf) p[i] = 1.0 / static_cast<double>(tops);
        return p;
    }
    if (m == -inf) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
        return p;
    }
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += (p[i] = std::exp(log_weights[i] - m));
    for (double& v : p) v /= total;
    return p;
}

std::vector<double> exponential_log_weights(std::span<const double> u, double delta_u, double epsilon) {
    std::vector<double> l(u.size(), 0.0);
    if (!scaled(u, delta_u, epsilon)) return l;
    for (std::size_t i = 0; i < u.size(); ++i) l[i] = epsilon * u[i] / (2.0 * delta_u);
    return l;
}

std::vector<double> exponential_probabilities(std::span<const double> u, double delta_u, double epsilon) {
    return normalized_probabilities(exponential_log_weights(u, delta_u, epsilon));
}

std::size_t exponential_mechanism(std::span<const double> u, double delta_u, double epsilon, RandomSource& rng) {
    return sample_log_weights(exponential_log_weights(u, delta_u, epsilon), rng);
}

std::size_t permute_and_flip(std::span<const double> u, double delta_u, double epsilon, RandomSource& rng) {
    const bool s = scaled(u, delta_u, epsilon);
    const double best = *std::max_element(u.begin(), u.end());
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t r : order) {
        if (!s || u[r] == best) return r;
        if (rng.bernoulli(std::exp(epsilon * (u[r] - best) / (2.0 * delta_u)))) return r;
    }
    return order.back();  // unreachable: the maximum always accepts
}

std::size_t report_noisy_max(std::span<const double> u, double delta_u, double epsilon, Noise noise,
                             RandomSource& rng) {
    if (!scaled(u, delta_u, epsilon)) return rng.index(u.size());
    const double scale = 2.0 * delta_u / epsilon;
    std::size_t arg = 0;
    double best = -inf;
    for (std::size_t r = 0; r < u.size(); ++r) {
        double z = 0;
        switch (noise) {
            case Noise::laplace: z = rng.laplace(scale); break;
            case Noise::exponential: z = rng.exponential(scale); break;
            case Noise::gumbel: z = rng.gumbel(scale); break;
        }
        if (u[r] + z > best) {
            best = u[r] + z;
            arg = r;
        }
    }
    return arg;
}

std::size_t run_global_mechanism(GlobalMechanism m, std::span<const double> u, double delta_u, double epsilon,
                                 RandomSource& rng) {
    switch (m) {
        case GlobalMechanism::exponential: return exponential_mechanism(u, delta_u, epsilon, rng);
        case GlobalMechanism::permute_and_flip: return permute_and_flip(u, delta_u, epsilon, rng);
        case GlobalMechanism::rnm_laplace: return report_noisy_max(u, delta_u, epsilon, Noise::laplace, rng);
        case GlobalMechanism::rnm_exponential: return report_noisy_max(u, delta_u, epsilon, Noise::exponential, rng);
        case GlobalMechanism::rnm_gumbel: return report_noisy_max(u, delta_u, epsilon, Noise::gumbel, rng);
    }
    throw std::invalid_argument("unknown mechanism");
}

namespace {

// Walks the knots outward one level at a time.
struct KnotWalk {
    double u;
    double prev = 0;  // |b(±t)|
    double value = 0;
    bool done = false;
    bool pending = false;  // negative u sitting on a knot that may repeat

    explicit KnotWalk(double u_) : u(u_) {
        if (std::isnan(u)) throw std::invalid_argument("dampening of NaN utility");
        done = (u == 0);
    }

    void step(std::size_t t, double delta) {
        if (!(delta >= 0) || !std::isfinite(delta))
            throw std::invalid_argument("sensitivity function returned a negative or non-finite value");
        const double next = prev + delta;
        const double level = static_cast<double>(t);
        if (u > 0) {
            if (next >= u) {
                value = next == u ? level + 1 : level + (u - prev) / (next - prev);
                done = true;
            }
        } else if (pending) {
            if (delta == 0) value = -(level + 1);
            else done = true;
        } else if (next >= -u) {
            if (next == -u) {
                value = -(level + 1);
                pending = true;
            } else {
                value = (u + next) / (next - prev) - (level + 1);
                done = true;
            }
        }
        prev = next;
    }

    void finish(std::size_t window) {
        if (done) return;
        if (pending) {
            done = true;
            return;
        }
        if (prev == 0) {
            value = u > 0 ? inf : -inf;
            done = true;
            return;
        }
        throw DampeningWindowExceeded("dampening window of " + std::to_string(window) +
                                      " knots exhausted before reaching utility " + std::to_string(u));
    }
};

}  // namespace

DampeningFunction::DampeningFunction(SensitivitySequence delta, std::size_t window)
    : delta_(std::move(delta)), window_(window) {
    if (!delta_) throw std::invalid_argument("dampening requires a sensitivity function");
    if (window_ == 0) throw std::invalid_argument("dampening window must be positive");
}

double DampeningFunction::knot(long long i) const {
    const auto n = static_cast<std::size_t>(i < 0 ? -i : i);
    double b = 0;
    for (std::size_t j = 0; j < n; ++j) b += delta_(j);
    return i < 0 ? -b : b;
}

double DampeningFunction::operator()(double u) const {
    KnotWalk walk(u);
    for (std::size_t t = 0; t < window_ && !walk.done; ++t) walk.step(t, delta_(t));
    walk.finish(window_);
    return walk.value;
}

DampeningFunction build_dampening(SensitivitySequence delta, std::size_t window) {
    return DampeningFunction(std::move(delta), window);
}

LevelSensitivity per_candidate(std::function<double(std::size_t t, std::size_t r)> delta) {
    return [delta = std::move(delta)](std::size_t t, std::span<const std::size_t> active, std::span<double> out) {
        for (std::size_t r : active) out[r] = delta(t, r);
    };
}

std::vector<double> dampened_values(std::span<const double> u, const LevelSensitivity& delta, std::size_t window) {
    if (window == 0) throw std::invalid_argument("dampening window must be positive");
    std::vector<KnotWalk> walks;
    walks.reserve(u.size());
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < u.size(); ++r) {
        walks.emplace_back(u[r]);
        if (!walks.back().done) active.push_back(r);
    }
    std::vector<double> level(u.size(), 0.0);
    for (std::size_t t = 0; t < window && !active.empty(); ++t) {
        delta(t, active, level);
        std::size_t keep = 0;
        for (std::size_t r : active) {
            walks[r].step(t, level[r]);
            if (!walks[r].done) active[keep++] = r;
        }
        active.resize(keep);
    }
    std::vector<double> d(u.size());
    for (std::size_t r = 0; r < u.size(); ++r) {
        walks[r].finish(window);
        d[r] = walks[r].value;
    }
    return d;
}

std::vector<double> local_dampening_log_weights(std::span<const double> u, const LevelSensitivity& delta,
                                                double epsilon, std::size_t window) {
    check_candidates(u);
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    auto d = dampened_values(u, delta, window);
    for (double& v : d) v = epsilon * v / 2.0;
    return d;
}

std::size_t local_dampening(std::span<const double> u, const LevelSensitivity& delta, double epsilon,
                            std::size_t window, RandomSource& rng) {
    return sample_log_weights(local_dampening_log_weights(u, delta, epsilon, window), rng);
}

}  // namespace dpmos
