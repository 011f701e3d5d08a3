#include "stepdown/normal.hpp"

#include <cmath>

namespace stepdown {

namespace {

// Upper-tail probability P{Z > x} for x >= 0 via Abramowitz & Stegun 26.2.17:
// Q(x) = phi(x) * t * (b1 + t*(b2 + t*(b3 + t*(b4 + t*b5)))), t = 1/(1+p*x).
double upper_tail(double x) {
    constexpr double p = 0.2316419;
    constexpr double b1 = 0.319381530;
    constexpr double b2 = -0.356563782;
    constexpr double b3 = 1.781477937;
    constexpr double b4 = -1.821255978;
    constexpr double b5 = 1.330274429;
    const double t = 1.0 / (1.0 + p * x);
    const double poly = t * (b1 + t * (b2 + t * (b3 + t * (b4 + t * b5))));
    const double pdf = 0.3989422804014327 * std::exp(-0.5 * x * x);
    return pdf * poly;
}

}  // namespace

double normal_cdf(double x) {
    if (x >= 0.0) return 1.0 - upper_tail(x);
    return upper_tail(-x);
}

}  // namespace stepdown
