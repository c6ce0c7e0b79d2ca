#pragma once

namespace csl {

// Error function, absolute error below 1e-12 over the whole real line.
// Evaluated through the non-alternating confluent series
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (2k+1)!!
// for |x| < 6.5; beyond that erf is +-1 to well under 1e-15.
double erf(double x);

}  // namespace csl
