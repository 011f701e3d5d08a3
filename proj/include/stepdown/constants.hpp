#pragma once

#include <span>
#include <vector>

#include "stepdown/types.hpp"

namespace stepdown {

// Partial harmonic sum C_j = 1 + 1/2 + ... + 1/j, with C_0 = 0.
double harmonic(int j);

// Holm: alpha/(s-i+1) at rank i.
CriticalSequence holm_constants(const ControlParams& p);

// k-FWER stepdown: k*alpha/s for i <= k, then k*alpha/(s+k-i).
CriticalSequence kfwer_constants(const ControlParams& p);

// FDP stepdown base sequence: (floor(gamma*i)+1)*alpha / (s+floor(gamma*i)+1-i).
CriticalSequence fdp_base_constants(const ControlParams& p);

// Base sequence divided by the harmonic constant C_{floor(gamma*s)+1}.
CriticalSequence fdp_lr_constants(const ControlParams& p);

// Base sequence divided by the sharper divisor D(gamma, s) from d_value.
CriticalSequence fdp_improved_constants(const ControlParams& p);

// The beta majorant sequence (beta_1, ..., beta_{floor(gamma*s)+1}) for a
// hypothetical count of true nulls. With empty deltas, beta_m is
// m / max{s+m-ceil(m/gamma)+1, num_true} for m <= floor(gamma*s) and
// m/num_true at the final index. With deltas (nondecreasing, within [0,1]),
// beta_m = deltas[k] with k = min{s, s+m-num_true, ceil(m/gamma)-1}.
std::vector<double> beta_sequence(const ControlParams& p, std::span<const double> deltas,
                                  int num_true);

// Truncation point N: how many beta terms matter for a given true-null count.
int n_cap(const ControlParams& p, int num_true);

// S = num_true * sum_{i=1..N} (beta_i - beta_{i-1}) / i, beta_0 = 0.
double s_value(const ControlParams& p, std::span<const double> deltas, int num_true);

// D = max over num_true in {1..s} of s_value; argmax is the smallest
// maximizer. Set keep_per_size to record (num_true, N, S) for every size.
DResult d_value(const ControlParams& p, std::span<const double> deltas = {},
                bool keep_per_size = false);

// Rescales an arbitrary nondecreasing sequence of constants to alpha*delta/D.
// Deltas with a maximum above 1 are first normalized by that maximum; the
// factor is recorded in delta_scale.
CriticalSequence rescale_custom(const ControlParams& p, std::span<const double> deltas);

enum class EtaVariant { scaled_by_d, scaled_by_harmonic };

// Proportional constants eta_i = i/s rescaled two ways: by D(gamma, s)
// (scaled_by_d) or by the closed-form bound (1/gamma)*max{C_floor(gamma*s), 1}
// (scaled_by_harmonic).
CriticalSequence eta_constants(const ControlParams& p, EtaVariant variant);

// FDR stepdown constants min{s*alpha/(s-i+1)^2, 1}; the conservative variant
// uses alpha*min{s/(s-i+1)^2, 1} so no constant exceeds alpha.
CriticalSequence fdr_stepdown_constants(const ControlParams& p, bool conservative = false);

// Benjamini-Hochberg stepup baseline i*alpha/s.
CriticalSequence bh_stepup_constants(const ControlParams& p);

enum class LevelConversion { fdr_to_fdp, fdp_to_fdr };

// Converts between FDR and FDP exceedance levels: an FDR bound q yields a
// P{FDP > gamma} bound of q/gamma (capped at 1); an FDP exceedance bound
// alpha yields an FDR bound of alpha*(1-gamma)+gamma.
double convert_levels(LevelConversion direction, const Rational& gamma, double level);

// Largest m such that an adversary with s-num_true false hypotheses can zero
// out ceil(m/gamma)-1 of them; 0 when no step is reachable.
int sharp_trigger_cap(const ControlParams& p, int num_true);

// num_true * sum_{m=1..cap} (beta_m - beta_{m-1})/m over the no-delta betas:
// the exact union probability, per unit alpha, attained by the sharp
// construction truncated at the trigger cap.
double sharp_lower_bound(const ControlParams& p, int num_true);

// Dispatch by recipe tag; deltas are consumed by rescaled-custom only.
CriticalSequence make_sequence(Recipe recipe, const ControlParams& p,
                               std::span<const double> deltas = {});

}  // namespace stepdown
