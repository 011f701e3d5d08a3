#include "stepdown/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stepdown {

namespace {

// floor(gamma*s) + 1, the length of every beta sequence.
int beta_count(const ControlParams& p) {
    return static_cast<int>(p.gamma.floor_mul(p.s)) + 1;
}

void check_deltas(const ControlParams& p, std::span<const double> deltas) {
    if (static_cast<int>(deltas.size()) != p.s) {
        throw std::invalid_argument("deltas must have one entry per hypothesis");
    }
    double prev = 0.0;
    for (size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] >= 0.0 && deltas[i] <= 1.0)) {
            throw std::invalid_argument("delta outside [0, 1] at index " + std::to_string(i + 1));
        }
        if (deltas[i] < prev) {
            throw std::invalid_argument("deltas must be nondecreasing (violated at index " +
                                        std::to_string(i + 1) + ")");
        }
        prev = deltas[i];
    }
}

// beta_m for one m, given ceil(m/gamma) precomputed. The no-delta form and
// the delta form share the same feasible-index reasoning, so both live here.
double beta_term(const ControlParams& p, std::span<const double> deltas, int num_true, int m,
                 std::int64_t ceil_m_over_gamma, int count) {
    if (deltas.empty()) {
        if (m < count) {
            const std::int64_t denom =
                std::max<std::int64_t>(p.s + m - ceil_m_over_gamma + 1, num_true);
            return static_cast<double>(m) / static_cast<double>(denom);
        }
        return static_cast<double>(m) / static_cast<double>(num_true);
    }
    const std::int64_t k = std::min<std::int64_t>(
        {p.s, static_cast<std::int64_t>(p.s) + m - num_true, ceil_m_over_gamma - 1});
    return deltas[static_cast<size_t>(k - 1)];
}

// S for one candidate num_true, reusing precomputed ceilings.
double s_for_size(const ControlParams& p, std::span<const double> deltas, int num_true,
                  std::span<const std::int64_t> ceilings, int count, int cap) {
    double acc = 0.0;
    double prev = 0.0;
    for (int m = 1; m <= cap; ++m) {
        const double b = beta_term(p, deltas, num_true, m, ceilings[m - 1], count);
        acc += (b - prev) / m;
        prev = b;
    }
    return num_true * acc;
}

std::vector<std::int64_t> precompute_ceilings(const ControlParams& p, int count) {
    std::vector<std::int64_t> c(count);
    for (int m = 1; m <= count; ++m) c[m - 1] = p.gamma.ceil_div_into(m);
    return c;
}

}  // namespace

double harmonic(int j) {
    if (j < 0) throw std::invalid_argument("harmonic index must be >= 0");
    double acc = 0.0;
    for (int i = j; i >= 1; --i) acc += 1.0 / i;
    return acc;
}

CriticalSequence holm_constants(const ControlParams& p) {
    p.require_basic();
    CriticalSequence seq;
    seq.recipe = Recipe::holm;
    seq.params = p;
    seq.values.resize(p.s);
    for (int i = 1; i <= p.s; ++i) {
        seq.values[i - 1] = p.alpha / static_cast<double>(p.s - i + 1);
    }
    return seq;
}

CriticalSequence kfwer_constants(const ControlParams& p) {
    p.require_basic();
    p.require_k();
    CriticalSequence seq;
    seq.recipe = Recipe::kfwer;
    seq.params = p;
    seq.values.resize(p.s);
    for (int i = 1; i <= p.s; ++i) {
        const int denom = i <= p.k ? p.s : p.s + p.k - i;
        seq.values[i - 1] = static_cast<double>(p.k) * p.alpha / static_cast<double>(denom);
    }
    return seq;
}

CriticalSequence fdp_base_constants(const ControlParams& p) {
    p.require_basic();
    p.require_gamma();
    CriticalSequence seq;
    seq.recipe = Recipe::fdp_base;
    seq.params = p;
    seq.values.resize(p.s);
    for (int i = 1; i <= p.s; ++i) {
        const std::int64_t gi = p.gamma.floor_mul(i);
        seq.values[i - 1] = static_cast<double>(gi + 1) * p.alpha /
                            static_cast<double>(p.s + gi + 1 - i);
    }
    return seq;
}

CriticalSequence fdp_lr_constants(const ControlParams& p) {
    CriticalSequence seq = fdp_base_constants(p);
    const double c = harmonic(beta_count(p));
    for (double& v : seq.values) v /= c;
    seq.recipe = Recipe::fdp_lr;
    seq.d_used = c;
    return seq;
}

CriticalSequence fdp_improved_constants(const ControlParams& p) {
    CriticalSequence seq = fdp_base_constants(p);
    const double d = d_value(p).d;
    for (double& v : seq.values) v /= d;
    seq.recipe = Recipe::fdp_improved;
    seq.d_used = d;
    return seq;
}

std::vector<double> beta_sequence(const ControlParams& p, std::span<const double> deltas,
                                  int num_true) {
    p.require_basic();
    p.require_gamma();
    if (num_true < 1 || num_true > p.s) {
        throw std::invalid_argument("num_true must lie in [1, s]");
    }
    if (!deltas.empty()) check_deltas(p, deltas);
    const int count = beta_count(p);
    const auto ceilings = precompute_ceilings(p, count);
    std::vector<double> betas(count);
    for (int m = 1; m <= count; ++m) {
        betas[m - 1] = beta_term(p, deltas, num_true, m, ceilings[m - 1], count);
    }
    return betas;
}

int n_cap(const ControlParams& p, int num_true) {
    p.require_basic();
    p.require_gamma();
    if (num_true < 1 || num_true > p.s) {
        throw std::invalid_argument("num_true must lie in [1, s]");
    }
    const Rational one(1, 1);
    const Rational slack =
        p.gamma * (Rational(p.s - num_true, 1) / (one - p.gamma) + one);
    const std::int64_t third = slack.floor() + 1;
    return static_cast<int>(std::min<std::int64_t>({beta_count(p), num_true, third}));
}

double s_value(const ControlParams& p, std::span<const double> deltas, int num_true) {
    if (!deltas.empty()) check_deltas(p, deltas);
    const int count = beta_count(p);
    const auto ceilings = precompute_ceilings(p, count);
    const int cap = n_cap(p, num_true);
    return s_for_size(p, deltas, num_true, ceilings, count, cap);
}

DResult d_value(const ControlParams& p, std::span<const double> deltas, bool keep_per_size) {
    p.require_basic();
    p.require_gamma();
    if (!deltas.empty()) check_deltas(p, deltas);
    const int count = beta_count(p);
    const auto ceilings = precompute_ceilings(p, count);

    DResult result;
    result.d = -1.0;
    if (keep_per_size) result.per_size.reserve(p.s);
    for (int num_true = 1; num_true <= p.s; ++num_true) {
        const int cap = n_cap(p, num_true);
        const double s = s_for_size(p, deltas, num_true, ceilings, count, cap);
        if (s > result.d) {
            result.d = s;
            result.argmax_num_true = num_true;
        }
        if (keep_per_size) result.per_size.push_back({num_true, cap, s});
    }
    return result;
}

CriticalSequence rescale_custom(const ControlParams& p, std::span<const double> deltas) {
    p.require_basic();
    p.require_gamma();
    if (static_cast<int>(deltas.size()) != p.s) {
        throw std::invalid_argument("deltas must have one entry per hypothesis");
    }
    std::vector<double> scaled(deltas.begin(), deltas.end());
    if (!scaled.empty() && scaled.front() < 0.0) {
        throw std::invalid_argument("deltas must be nonnegative");
    }
    const double top = scaled.back();  // nondecreasing, so the last is the max
    if (!(top > 0.0)) throw std::invalid_argument("deltas must contain a positive value");
    double scale = 1.0;
    if (top > 1.0) {
        scale = top;
        for (double& v : scaled) v /= scale;
        // guard against 1+ulp artifacts from the division
        for (double& v : scaled) v = std::min(v, 1.0);
    }
    const DResult d = d_value(p, scaled);
    if (!(d.d > 0.0)) {
        throw std::domain_error(
            "rescaling divisor is zero: no feasible index reaches a positive delta");
    }
    CriticalSequence seq;
    seq.recipe = Recipe::rescaled_custom;
    seq.params = p;
    seq.d_used = d.d;
    seq.delta_scale = scale;
    seq.values.resize(p.s);
    for (int i = 0; i < p.s; ++i) {
        seq.values[i] = std::min(p.alpha * scaled[i] / d.d, 1.0);
    }
    return seq;
}

CriticalSequence eta_constants(const ControlParams& p, EtaVariant variant) {
    p.require_basic();
    p.require_gamma();
    std::vector<double> eta(p.s);
    for (int i = 1; i <= p.s; ++i) eta[i - 1] = static_cast<double>(i) / p.s;

    CriticalSequence seq;
    seq.params = p;
    seq.values.resize(p.s);
    if (variant == EtaVariant::scaled_by_d) {
        const DResult d = d_value(p, eta);
        seq.recipe = Recipe::eta_i;
        seq.d_used = d.d;
        for (int i = 0; i < p.s; ++i) seq.values[i] = p.alpha * eta[i] / d.d;
    } else {
        const std::int64_t gs = p.gamma.floor_mul(p.s);
        const double bound =
            std::max(harmonic(static_cast<int>(gs)), 1.0) / p.gamma.to_double();
        seq.recipe = Recipe::eta_ii;
        seq.d_used = bound;
        for (int i = 0; i < p.s; ++i) seq.values[i] = p.alpha * eta[i] / bound;
    }
    return seq;
}

CriticalSequence fdr_stepdown_constants(const ControlParams& p, bool conservative) {
    p.require_basic();
    CriticalSequence seq;
    seq.recipe = conservative ? Recipe::fdr_conservative : Recipe::fdr_stepdown;
    seq.params = p;
    seq.values.resize(p.s);
    for (int i = 1; i <= p.s; ++i) {
        const double rank_term =
            static_cast<double>(p.s) / (static_cast<double>(p.s - i + 1) * (p.s - i + 1));
        seq.values[i - 1] = conservative ? p.alpha * std::min(rank_term, 1.0)
                                         : std::min(rank_term * p.alpha, 1.0);
    }
    return seq;
}

CriticalSequence bh_stepup_constants(const ControlParams& p) {
    p.require_basic();
    CriticalSequence seq;
    seq.recipe = Recipe::bh_stepup;
    seq.params = p;
    seq.values.resize(p.s);
    for (int i = 1; i <= p.s; ++i) {
        seq.values[i - 1] = static_cast<double>(i) * p.alpha / static_cast<double>(p.s);
    }
    return seq;
}

double convert_levels(LevelConversion direction, const Rational& gamma, double level) {
    if (!(level >= 0.0 && level <= 1.0)) {
        throw std::invalid_argument("level must lie in [0, 1]");
    }
    if (gamma < Rational(0, 1) || gamma >= Rational(1, 1)) {
        throw std::invalid_argument("gamma must lie in [0, 1)");
    }
    const double g = gamma.to_double();
    if (direction == LevelConversion::fdr_to_fdp) {
        if (!(gamma > Rational(0, 1))) {
            throw std::invalid_argument("fdr_to_fdp requires gamma > 0");
        }
        return std::min(level / g, 1.0);
    }
    return level * (1.0 - g) + g;
}

int sharp_trigger_cap(const ControlParams& p, int num_true) {
    p.require_basic();
    p.require_gamma();
    if (num_true < 1 || num_true > p.s) {
        throw std::invalid_argument("num_true must lie in [1, s]");
    }
    const int count = beta_count(p);
    const int false_count = p.s - num_true;
    int cap = 0;
    for (int m = 1; m <= std::min(count, num_true); ++m) {
        if (p.gamma.ceil_div_into(m) - 1 > false_count) break;
        cap = m;
    }
    return cap;
}

double sharp_lower_bound(const ControlParams& p, int num_true) {
    const int cap = sharp_trigger_cap(p, num_true);
    const auto betas = beta_sequence(p, {}, num_true);
    double acc = 0.0;
    double prev = 0.0;
    for (int m = 1; m <= cap; ++m) {
        acc += (betas[m - 1] - prev) / m;
        prev = betas[m - 1];
    }
    return num_true * acc;
}

CriticalSequence make_sequence(Recipe recipe, const ControlParams& p,
                               std::span<const double> deltas) {
    if (recipe != Recipe::rescaled_custom && !deltas.empty()) {
        throw std::invalid_argument("deltas only apply to the rescaled-custom recipe");
    }
    switch (recipe) {
        case Recipe::holm: return holm_constants(p);
        case Recipe::kfwer: return kfwer_constants(p);
        case Recipe::fdp_base: return fdp_base_constants(p);
        case Recipe::fdp_lr: return fdp_lr_constants(p);
        case Recipe::fdp_improved: return fdp_improved_constants(p);
        case Recipe::rescaled_custom: return rescale_custom(p, deltas);
        case Recipe::eta_i: return eta_constants(p, EtaVariant::scaled_by_d);
        case Recipe::eta_ii: return eta_constants(p, EtaVariant::scaled_by_harmonic);
        case Recipe::fdr_stepdown: return fdr_stepdown_constants(p, false);
        case Recipe::fdr_conservative: return fdr_stepdown_constants(p, true);
        case Recipe::bh_stepup: return bh_stepup_constants(p);
    }
    throw std::logic_error("unknown recipe");
}

}  // namespace stepdown
