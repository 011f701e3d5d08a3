#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stepdown/types.hpp"

namespace stepdown {

struct PValueSet {
    std::vector<double> values;
    std::vector<std::string> ids;  // optional; when present, one per value

    void check() const;
};

enum class StepMode { stepdown, stepup };

const char* to_string(StepMode m);
std::optional<StepMode> step_mode_from(std::string_view name);

struct TraceRow {
    int rank = 0;       // 1-based position in the sorted order
    int index = 0;      // 0-based position in the input
    double p = 0.0;
    double threshold = 0.0;
    bool rejected = false;
};

struct RejectionOutcome {
    StepMode mode = StepMode::stepdown;
    int num_rejected = 0;
    std::vector<int> rejected;     // original 0-based indices, ascending
    std::vector<TraceRow> trace;   // one row per rank
};

// Number of rejections for already-sorted p-values against nondecreasing
// thresholds. Stepdown walks up until the first failure; stepup rejects
// through the largest rank whose p-value clears its threshold. Comparisons
// are non-strict: a p-value equal to its threshold is rejected.
int rejection_count(std::span<const double> sorted_p, std::span<const double> thresholds,
                    StepMode mode);

// Full procedure on raw p-values. Ties are ordered by (value, input position)
// so the rejected set is deterministic.
RejectionOutcome apply(std::span<const double> pvalues, std::span<const double> thresholds,
                       StepMode mode);
RejectionOutcome apply(const PValueSet& p, const CriticalSequence& c, StepMode mode);

RejectionOutcome stepdown(const PValueSet& p, const CriticalSequence& c);
RejectionOutcome stepup(const PValueSet& p, const CriticalSequence& c);

}  // namespace stepdown
