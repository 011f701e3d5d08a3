#include "stepdown/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace stepdown {

int TruthMask::num_true() const {
    int n = 0;
    for (bool b : is_true_null) n += b ? 1 : 0;
    return n;
}

void TruthMask::check(size_t s) const {
    if (is_true_null.size() != s) {
        throw std::invalid_argument("truth mask length differs from p-value count");
    }
}

int false_rejections(const RejectionOutcome& outcome, const TruthMask& truth) {
    int n = 0;
    for (int idx : outcome.rejected) {
        if (idx < 0 || idx >= static_cast<int>(truth.is_true_null.size())) {
            throw std::invalid_argument("rejected index outside the truth mask");
        }
        if (truth.is_true_null[idx]) ++n;
    }
    return n;
}

double fdp(const RejectionOutcome& outcome, const TruthMask& truth) {
    if (outcome.num_rejected == 0) return 0.0;
    return static_cast<double>(false_rejections(outcome, truth)) / outcome.num_rejected;
}

bool kfwer_event(const RejectionOutcome& outcome, const TruthMask& truth, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return false_rejections(outcome, truth) >= k;
}

bool fdp_exceeds(const RejectionOutcome& outcome, const TruthMask& truth, const Rational& gamma) {
    if (outcome.num_rejected == 0) return false;
    const std::int64_t v = false_rejections(outcome, truth);
    return v * gamma.den() > gamma.num() * static_cast<std::int64_t>(outcome.num_rejected);
}

bool thm32_bound_event(std::vector<double> q, double alpha, const Rational& gamma, int s) {
    if (q.empty()) return false;
    const int num_true = static_cast<int>(q.size());
    std::sort(q.begin(), q.end());
    const int m_cap = static_cast<int>(
        std::min<std::int64_t>(gamma.floor_mul(s) + 1, num_true));
    for (int i = 1; i <= m_cap; ++i) {
        if (q[i - 1] <= static_cast<double>(i) * alpha / num_true) return true;
    }
    return false;
}

}  // namespace stepdown
