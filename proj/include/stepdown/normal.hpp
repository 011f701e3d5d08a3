#pragma once

namespace stepdown {

// Standard normal CDF, absolute error below 7.5e-8 (Abramowitz & Stegun
// formula 26.2.17). The two tails are computed from the same polynomial so
// that normal_cdf(-x) == 1 - normal_cdf(x) up to rounding.
double normal_cdf(double x);

}  // namespace stepdown
