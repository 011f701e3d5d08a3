#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "stepdown/rational.hpp"

namespace stepdown {

// Shared parameter block for every critical-value recipe. gamma is the FDP
// threshold, k the k-FWER order; recipes ignore the fields they do not use.
struct ControlParams {
    int s = 0;
    double alpha = 0.05;
    Rational gamma{1, 10};
    int k = 1;

    void require_basic() const;  // s >= 1 and 0 < alpha < 1
    void require_gamma() const;  // 0 < gamma < 1 exactly
    void require_k() const;      // 1 <= k <= s
};

enum class Recipe {
    holm,
    kfwer,
    fdp_base,
    fdp_lr,
    fdp_improved,
    rescaled_custom,
    eta_i,
    eta_ii,
    fdr_stepdown,
    fdr_conservative,
    bh_stepup,
};

const char* to_string(Recipe r);
// Parses the canonical tag ("fdp-improved"); "fdr-sd" is accepted as a
// shorthand for "fdr-stepdown". Returns nullopt on unknown tags.
std::optional<Recipe> recipe_from(std::string_view name);
bool recipe_needs_gamma(Recipe r);

struct CriticalSequence {
    Recipe recipe = Recipe::holm;
    ControlParams params;
    std::vector<double> values;           // values[i-1] is the rank-i constant
    std::optional<double> d_used;         // divisor applied by rescaled recipes
    std::optional<double> delta_scale;    // normalization applied to custom deltas

    // Enforces the defining shape: one value per hypothesis, nondecreasing,
    // all within [0, 1].
    void check() const;
};

struct DSizeDetail {
    int num_true = 0;   // candidate |I|
    int n_cap = 0;      // truncation point N for this |I|
    double s_value = 0;
};

struct DResult {
    double d = 0;
    int argmax_num_true = 0;              // smallest maximizing |I|
    std::vector<DSizeDetail> per_size;    // filled only when requested
};

}  // namespace stepdown
