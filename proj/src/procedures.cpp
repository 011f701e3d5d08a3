#include "stepdown/procedures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stepdown {

void PValueSet::check() const {
    if (values.empty()) throw std::invalid_argument("p-value set is empty");
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw std::invalid_argument("p-value outside [0, 1] at position " +
                                        std::to_string(i + 1));
        }
    }
    if (!ids.empty() && ids.size() != values.size()) {
        throw std::invalid_argument("ids and values differ in length");
    }
}

const char* to_string(StepMode m) {
    return m == StepMode::stepdown ? "stepdown" : "stepup";
}

std::optional<StepMode> step_mode_from(std::string_view name) {
    if (name == "stepdown") return StepMode::stepdown;
    if (name == "stepup") return StepMode::stepup;
    return std::nullopt;
}

int rejection_count(std::span<const double> sorted_p, std::span<const double> thresholds,
                    StepMode mode) {
    if (sorted_p.size() != thresholds.size()) {
        throw std::invalid_argument("p-value count differs from threshold count");
    }
    const int s = static_cast<int>(sorted_p.size());
    if (mode == StepMode::stepdown) {
        int r = 0;
        while (r < s && sorted_p[r] <= thresholds[r]) ++r;
        return r;
    }
    for (int j = s - 1; j >= 0; --j) {
        if (sorted_p[j] <= thresholds[j]) return j + 1;
    }
    return 0;
}

RejectionOutcome apply(std::span<const double> pvalues, std::span<const double> thresholds,
                       StepMode mode) {
    if (pvalues.size() != thresholds.size()) {
        throw std::invalid_argument("p-value count differs from threshold count");
    }
    const int s = static_cast<int>(pvalues.size());
    std::vector<int> order(s);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pvalues[a] != pvalues[b]) return pvalues[a] < pvalues[b];
        return a < b;
    });

    std::vector<double> sorted(s);
    for (int i = 0; i < s; ++i) sorted[i] = pvalues[order[i]];
    const int r = rejection_count(sorted, thresholds, mode);

    RejectionOutcome out;
    out.mode = mode;
    out.num_rejected = r;
    out.rejected.assign(order.begin(), order.begin() + r);
    std::sort(out.rejected.begin(), out.rejected.end());
    out.trace.resize(s);
    for (int i = 0; i < s; ++i) {
        out.trace[i] = {i + 1, order[i], sorted[i], thresholds[i], i < r};
    }
    return out;
}

RejectionOutcome apply(const PValueSet& p, const CriticalSequence& c, StepMode mode) {
    p.check();
    c.check();
    if (p.values.size() != c.values.size()) {
        throw std::invalid_argument("p-value count differs from s");
    }
    return apply(p.values, c.values, mode);
}

RejectionOutcome stepdown(const PValueSet& p, const CriticalSequence& c) {
    return apply(p, c, StepMode::stepdown);
}

RejectionOutcome stepup(const PValueSet& p, const CriticalSequence& c) {
    return apply(p, c, StepMode::stepup);
}

}  // namespace stepdown
