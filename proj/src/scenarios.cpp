#include "stepdown/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stepdown/constants.hpp"
#include "stepdown/normal.hpp"

namespace stepdown {

namespace {

void check_betas(int t, std::span<const double> betas) {
    if (betas.empty()) throw std::invalid_argument("betas must be nonempty");
    if (static_cast<int>(betas.size()) > t) {
        throw std::invalid_argument("more betas than coordinates");
    }
    double prev = 0.0;
    for (double b : betas) {
        if (!(b >= 0.0 && b < 1.0)) {
            throw std::invalid_argument("betas must lie in [0, 1)");
        }
        if (b < prev) throw std::invalid_argument("betas must be nondecreasing");
        prev = b;
    }
}

double union_bound(int t, std::span<const double> betas) {
    double acc = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < betas.size(); ++i) {
        acc += static_cast<double>(t) * (betas[i] - prev) / static_cast<double>(i + 1);
        prev = betas[i];
    }
    return acc;
}

double draw_alt(const AltLaw& alt, rng::Xoshiro256& gen) {
    if (alt.kind == AltLaw::Kind::point_mass) return alt.epsilon;
    return std::pow(rng::uniform01(gen), alt.exponent);
}

}  // namespace

const char* to_string(Scenario::Kind k) {
    switch (k) {
        case Scenario::Kind::independent: return "independent";
        case Scenario::Kind::equicorrelated: return "equicorrelated";
        case Scenario::Kind::lemma31: return "lemma31";
        case Scenario::Kind::example31: return "example31";
        case Scenario::Kind::remark31: return "remark31";
        case Scenario::Kind::example41: return "example41";
    }
    return "?";
}

std::optional<Scenario::Kind> scenario_kind_from(std::string_view name) {
    if (name == "independent") return Scenario::Kind::independent;
    if (name == "equicorrelated") return Scenario::Kind::equicorrelated;
    if (name == "lemma31") return Scenario::Kind::lemma31;
    if (name == "example31") return Scenario::Kind::example31;
    if (name == "remark31") return Scenario::Kind::remark31;
    if (name == "example41") return Scenario::Kind::example41;
    return std::nullopt;
}

Scenario make_independent(int s, int num_true, AltLaw alt) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    if (num_true < 0 || num_true > s) throw std::invalid_argument("num_true must lie in [0, s]");
    if (alt.kind == AltLaw::Kind::point_mass && !(alt.epsilon >= 0.0 && alt.epsilon <= 1.0)) {
        throw std::invalid_argument("point-mass epsilon must lie in [0, 1]");
    }
    if (alt.kind == AltLaw::Kind::power && !(alt.exponent >= 1.0)) {
        throw std::invalid_argument("power-law exponent must be >= 1");
    }
    Scenario sc;
    sc.kind = Scenario::Kind::independent;
    sc.s = s;
    sc.num_true = num_true;
    sc.alt = alt;
    return sc;
}

Scenario make_equicorrelated(int s, int num_true, double rho, double shift,
                             bool independent_false) {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    if (num_true < 0 || num_true > s) throw std::invalid_argument("num_true must lie in [0, s]");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
    Scenario sc;
    sc.kind = Scenario::Kind::equicorrelated;
    sc.s = s;
    sc.num_true = num_true;
    sc.rho = rho;
    sc.shift = shift;
    sc.independent_false = independent_false;
    return sc;
}

Scenario make_lemma31(int t, std::vector<double> betas) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    check_betas(t, betas);
    if (union_bound(t, betas) > 1.0) {
        throw std::invalid_argument("union bound exceeds 1; the sharp mixture does not exist");
    }
    Scenario sc;
    sc.kind = Scenario::Kind::lemma31;
    sc.s = t;
    sc.num_true = t;
    sc.betas = std::move(betas);
    return sc;
}

std::vector<double> sharp_lemma31_betas(const ControlParams& p, int* argmax_out) {
    const DResult d = d_value(p);
    const int argmax = d.argmax_num_true;
    if (argmax_out) *argmax_out = argmax;
    const auto betas = beta_sequence(p, {}, argmax);
    const int cap = n_cap(p, argmax);
    std::vector<double> scaled(betas.begin(), betas.begin() + cap);
    for (double& b : scaled) b *= p.alpha / d.d;
    return scaled;
}

Scenario make_example31(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    Scenario sc;
    sc.kind = Scenario::Kind::example31;
    sc.s = 100;
    sc.num_true = 90;
    sc.alpha = alpha;
    sc.betas = {alpha / 92.0, 2.0 * alpha / 91.0};
    if (union_bound(sc.num_true, sc.betas) > 1.0) {
        throw std::invalid_argument("alpha too large for the sharp mixture");
    }
    return sc;
}

Scenario make_remark31(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    ControlParams p;
    p.s = 1000;
    p.alpha = alpha;
    p.gamma = Rational(1, 10);
    Scenario sc;
    sc.kind = Scenario::Kind::remark31;
    sc.s = p.s;
    sc.num_true = 712;
    sc.alpha = alpha;
    const int cap = sharp_trigger_cap(p, sc.num_true);
    const auto betas = beta_sequence(p, {}, sc.num_true);
    sc.betas.assign(betas.begin(), betas.begin() + cap);
    for (double& b : sc.betas) b *= alpha;
    if (union_bound(sc.num_true, sc.betas) > 1.0) {
        throw std::invalid_argument("alpha too large for the sharp mixture");
    }
    return sc;
}

Scenario make_example41(double alpha) {
    if (!(alpha > 0.0 && alpha < 4.0 / 9.0)) {
        throw std::invalid_argument("alpha must lie in (0, 4/9)");
    }
    Scenario sc;
    sc.kind = Scenario::Kind::example41;
    sc.s = 3;
    sc.num_true = 2;
    sc.alpha = alpha;
    return sc;
}

std::vector<double> sample_lemma31_sharp(int t, std::span<const double> betas,
                                         rng::Xoshiro256& gen) {
    check_betas(t, betas);
    const double bound = union_bound(t, betas);
    if (bound > 1.0) {
        throw std::invalid_argument("union bound exceeds 1; the sharp mixture does not exist");
    }
    const double top = betas.back();
    const double u = rng::uniform01(gen);
    std::vector<double> q(t);

    double cum = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < betas.size(); ++i) {
        const int sz = static_cast<int>(i) + 1;
        cum += static_cast<double>(t) * (betas[i] - prev) / sz;
        if (u < cum) {
            // event A_sz: sz coordinates fall into (beta_{sz-1}, beta_sz],
            // everything else sits above the support
            const auto subset = rng::sample_subset(gen, t, sz);
            std::vector<bool> low(t, false);
            for (int idx : subset) low[idx] = true;
            for (int j = 0; j < t; ++j) {
                q[j] = low[j] ? rng::uniform_left_open(gen, prev, betas[i])
                              : rng::uniform_left_open(gen, top, 1.0);
            }
            return q;
        }
        prev = betas[i];
    }
    for (int j = 0; j < t; ++j) q[j] = rng::uniform_left_open(gen, top, 1.0);
    return q;
}

Sample draw(const Scenario& sc, rng::Xoshiro256& gen) {
    Sample out;
    out.pvalues.values.resize(sc.s);
    out.truth.is_true_null.assign(sc.s, false);
    for (int i = 0; i < sc.num_true; ++i) out.truth.is_true_null[i] = true;

    switch (sc.kind) {
        case Scenario::Kind::independent: {
            for (int i = 0; i < sc.num_true; ++i) {
                out.pvalues.values[i] = rng::uniform01(gen);
            }
            for (int i = sc.num_true; i < sc.s; ++i) {
                out.pvalues.values[i] = draw_alt(sc.alt, gen);
            }
            break;
        }
        case Scenario::Kind::equicorrelated: {
            const double w = rng::standard_normal(gen);
            const double a = std::sqrt(sc.rho);
            const double b = std::sqrt(1.0 - sc.rho);
            for (int i = 0; i < sc.s; ++i) {
                const bool true_null = i < sc.num_true;
                double z;
                if (!true_null && sc.independent_false) {
                    z = rng::standard_normal(gen) + sc.shift;
                } else {
                    z = a * w + b * rng::standard_normal(gen) + (true_null ? 0.0 : sc.shift);
                }
                out.pvalues.values[i] = 1.0 - normal_cdf(z);
            }
            break;
        }
        case Scenario::Kind::lemma31: {
            out.pvalues.values = sample_lemma31_sharp(sc.s, sc.betas, gen);
            break;
        }
        case Scenario::Kind::example31: {
            const auto q = sample_lemma31_sharp(sc.num_true, sc.betas, gen);
            double qmin = 1.0;
            for (double v : q) qmin = std::min(qmin, v);
            for (int i = 0; i < sc.num_true; ++i) out.pvalues.values[i] = q[i];
            // 8 false p-values pinned at 0; the final 2 evade rejection
            // exactly when the first true-null threshold is crossed
            const double last_two = qmin <= sc.betas.front() ? 1.0 : 0.0;
            for (int i = sc.num_true; i < sc.s; ++i) {
                out.pvalues.values[i] = i < sc.s - 2 ? 0.0 : last_two;
            }
            break;
        }
        case Scenario::Kind::remark31: {
            const auto q = sample_lemma31_sharp(sc.num_true, sc.betas, gen);
            for (int i = 0; i < sc.num_true; ++i) out.pvalues.values[i] = q[i];
            std::vector<double> sorted(q);
            std::sort(sorted.begin(), sorted.end());
            int trigger = 0;  // smallest step whose scaled beta is crossed
            for (size_t i = 0; i < sc.betas.size(); ++i) {
                if (sorted[i] <= sc.betas[i]) {
                    trigger = static_cast<int>(i) + 1;
                    break;
                }
            }
            const Rational gamma(1, 10);
            const int zeros =
                trigger == 0 ? 0 : static_cast<int>(gamma.ceil_div_into(trigger)) - 1;
            for (int i = sc.num_true; i < sc.s; ++i) {
                out.pvalues.values[i] = (i - sc.num_true) < zeros ? 0.0 : 1.0;
            }
            break;
        }
        case Scenario::Kind::example41: {
            // ordered pair of distinct third-intervals, uniform over the six
            static constexpr int pairs[6][2] = {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
            const auto& pick = pairs[rng::uniform_below(gen, 6)];
            const double q1 = rng::uniform_in(gen, (pick[0] - 1) / 3.0, pick[0] / 3.0);
            const double q2 = rng::uniform_in(gen, (pick[1] - 1) / 3.0, pick[1] / 3.0);
            out.pvalues.values[0] = q1;
            out.pvalues.values[1] = q2;
            out.pvalues.values[2] = std::min(q1, q2) <= sc.alpha / 3.0 ? 1.0 : 0.0;
            break;
        }
    }
    return out;
}

Sample draw(const Scenario& sc, std::uint64_t seed) {
    rng::Xoshiro256 gen(seed);
    return draw(sc, gen);
}

}  // namespace stepdown
