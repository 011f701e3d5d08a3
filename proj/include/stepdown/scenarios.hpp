#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "stepdown/metrics.hpp"
#include "stepdown/procedures.hpp"
#include "stepdown/rng.hpp"
#include "stepdown/types.hpp"

namespace stepdown {

// Law of the false-null p-values in the benign samplers. point_mass puts
// every false p-value at epsilon; power draws u^exponent for uniform u, which
// piles mass near zero for exponent > 1.
struct AltLaw {
    enum class Kind { point_mass, power };
    Kind kind = Kind::point_mass;
    double epsilon = 0.0;
    double exponent = 4.0;
};

struct Scenario {
    enum class Kind { independent, equicorrelated, lemma31, example31, remark31, example41 };

    Kind kind = Kind::independent;
    int s = 0;
    int num_true = 0;
    AltLaw alt;
    double rho = 0.0;
    double shift = 2.0;
    bool independent_false = false;  // equicorrelated only: false nulls skip the common factor
    std::vector<double> betas;       // lemma31-style support points, already level-scaled
    double alpha = 0.05;             // level the adversarial constructions are tuned against
};

const char* to_string(Scenario::Kind k);
std::optional<Scenario::Kind> scenario_kind_from(std::string_view name);

struct Sample {
    PValueSet pvalues;
    TruthMask truth;
};

// True nulls iid uniform, false nulls iid from alt, everything independent.
Scenario make_independent(int s, int num_true, AltLaw alt);

// Latent Z_i = sqrt(rho) W + sqrt(1-rho) eps_i; true nulls use p = 1 - Phi(Z),
// false nulls add `shift` to their Z (or draw an independent normal plus
// shift when independent_false is set, which keeps the true-null block
// conditionally uniform given the false block).
Scenario make_equicorrelated(int s, int num_true, double rho, double shift,
                             bool independent_false = false);

// All-true-null mixture whose ordered statistics attain the union bound
// t * sum (beta_i - beta_{i-1}) / i exactly while every marginal stays
// uniform. Requires that bound <= 1 and betas nondecreasing in [0, 1).
Scenario make_lemma31(int t, std::vector<double> betas);

// The sharp default support for make_lemma31: the no-delta beta prefix at the
// maximizing true-null count, scaled by alpha/D, so the union bound equals
// alpha exactly.
std::vector<double> sharp_lemma31_betas(const ControlParams& p, int* argmax_out = nullptr);

// s=100 adversary against the unscaled fdp-base constants at gamma=0.1:
// 90 true nulls from the sharp mixture with support (alpha/92, 2*alpha/91),
// 8 false p-values pinned to zero, and 2 false p-values that jump to 1
// exactly when the smallest true-null p-value crosses alpha/92.
Scenario make_example31(double alpha);

// s=1000, 712 true nulls, gamma=0.1. True nulls come from the sharp mixture
// over the first 28 scaled betas; when the smallest triggering step i fires,
// ceil(i/gamma)-1 false p-values drop to 0 and the rest rise to 1.
Scenario make_remark31(double alpha);

// s=3 FDR adversary: two true p-values uniform on off-diagonal products of
// the three third-intervals, and one false p-value that equals 1 exactly when
// the smaller true p-value is below alpha/3 (0 otherwise). Needs alpha < 4/9.
Scenario make_example41(double alpha);

Sample draw(const Scenario& sc, rng::Xoshiro256& gen);
Sample draw(const Scenario& sc, std::uint64_t seed);

// Core of the sharp mixture, reused by the adversarial samplers.
std::vector<double> sample_lemma31_sharp(int t, std::span<const double> betas,
                                         rng::Xoshiro256& gen);

}  // namespace stepdown
