#pragma once

#include <vector>

#include "stepdown/procedures.hpp"
#include "stepdown/rational.hpp"

namespace stepdown {

struct TruthMask {
    std::vector<bool> is_true_null;

    int num_true() const;
    void check(size_t s) const;
};

// False rejections over total rejections; 0 when nothing is rejected.
double fdp(const RejectionOutcome& outcome, const TruthMask& truth);

int false_rejections(const RejectionOutcome& outcome, const TruthMask& truth);

// True when at least k true nulls were rejected.
bool kfwer_event(const RejectionOutcome& outcome, const TruthMask& truth, int k);

// Exact comparison FDP > gamma without forming the quotient: with v false
// rejections out of r, tests v*den > num*r in integers.
bool fdp_exceeds(const RejectionOutcome& outcome, const TruthMask& truth, const Rational& gamma);

// Simes-form diagnostic event over the true-null p-values q: true when
// q_(i) <= i*alpha/|I| for some i <= M, M = min(floor(gamma*s)+1, |I|).
// Any trial with FDP > gamma under stepdown with the fdp-base constants also
// triggers this event, which is what makes it a useful simulation diagnostic.
// q need not be pre-sorted. |I| = 0 returns false.
bool thm32_bound_event(std::vector<double> q, double alpha, const Rational& gamma, int s);

}  // namespace stepdown
