#include "stepdown/types.hpp"

#include <stdexcept>
#include <string>

namespace stepdown {

void ControlParams::require_basic() const {
    if (s < 1) throw std::invalid_argument("s must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

void ControlParams::require_gamma() const {
    if (!(gamma > Rational(0, 1) && gamma < Rational(1, 1))) {
        throw std::invalid_argument("gamma must lie strictly between 0 and 1");
    }
}

void ControlParams::require_k() const {
    if (k < 1 || k > s) throw std::invalid_argument("k must satisfy 1 <= k <= s");
}

const char* to_string(Recipe r) {
    switch (r) {
        case Recipe::holm: return "holm";
        case Recipe::kfwer: return "kfwer";
        case Recipe::fdp_base: return "fdp-base";
        case Recipe::fdp_lr: return "fdp-lr";
        case Recipe::fdp_improved: return "fdp-improved";
        case Recipe::rescaled_custom: return "rescaled-custom";
        case Recipe::eta_i: return "eta-i";
        case Recipe::eta_ii: return "eta-ii";
        case Recipe::fdr_stepdown: return "fdr-stepdown";
        case Recipe::fdr_conservative: return "fdr-conservative";
        case Recipe::bh_stepup: return "bh-stepup";
    }
    return "?";
}

std::optional<Recipe> recipe_from(std::string_view name) {
    if (name == "holm") return Recipe::holm;
    if (name == "kfwer") return Recipe::kfwer;
    if (name == "fdp-base") return Recipe::fdp_base;
    if (name == "fdp-lr") return Recipe::fdp_lr;
    if (name == "fdp-improved") return Recipe::fdp_improved;
    if (name == "rescaled-custom") return Recipe::rescaled_custom;
    if (name == "eta-i") return Recipe::eta_i;
    if (name == "eta-ii") return Recipe::eta_ii;
    if (name == "fdr-stepdown" || name == "fdr-sd") return Recipe::fdr_stepdown;
    if (name == "fdr-conservative") return Recipe::fdr_conservative;
    if (name == "bh-stepup") return Recipe::bh_stepup;
    return std::nullopt;
}

bool recipe_needs_gamma(Recipe r) {
    switch (r) {
        case Recipe::fdp_base:
        case Recipe::fdp_lr:
        case Recipe::fdp_improved:
        case Recipe::rescaled_custom:
        case Recipe::eta_i:
        case Recipe::eta_ii:
            return true;
        default:
            return false;
    }
}

void CriticalSequence::check() const {
    if (static_cast<int>(values.size()) != params.s) {
        throw std::logic_error("critical sequence length differs from s");
    }
    double prev = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::logic_error("critical value outside [0, 1] at rank " + std::to_string(i + 1));
        }
        if (v < prev) {
            throw std::logic_error("critical values decrease at rank " + std::to_string(i + 1));
        }
        prev = v;
    }
}

}  // namespace stepdown
