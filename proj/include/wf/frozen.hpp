#pragma once

// Frozen empirical constants for every bound whose absolute constant is not
// pinned by a closed form.  Protocol: tools/calibrate searches the minimal
// admissible value on the calibration range, the constant is frozen at twice
// that value, and the sweeps then assert the bound with the frozen constant
// on ranges at least twice as large.  Regenerate with
//   calibrate --emit-header
// and paste the emitted block below the marker.

#include "wf/rational.hpp"

namespace wf::frozen {

// sum_k lambda_k^2 for counterexample specs.  The scale-selection rule takes
// the k-th weight from a block-endpoint set of size >= k+1, so the sum is
// at most sum 1/(k+1)^2 < pi^2/6 < 2; fixed, not calibrated.
inline const Rational kWeightSquareSumBound = Rational(2);

// --- calibrated block (output of: calibrate --emit-header) -----------------

// |n K_n| <= c * block-kernel sum; calibrated on n <= 1024, frozen at 2x.
inline const Rational kUpperBoundConstant = make_rational(372, 47);

// int_{I_M} |K_n(x+t)| dmu <= c n 2^{k+l-M}; calibrated on M in {3,4,5},
// n <= 2^{M+2}, frozen at 2x.
inline const Rational kTailIntegralConstant = make_rational(1, 64);

// Atom statistic (integral of sqrt of the restricted maximal function over
// the complement of the support interval) per bounded family; calibrated on
// seeds 0..99, support levels 4..8, frozen at 2x the maximum.
inline constexpr double kAtomStatisticPowers = 1.3218373465780555;
inline constexpr double kAtomStatisticPowersPlusOne = 2.445338387617761;
inline constexpr double kAtomStatisticPowersPlusHalfpower = 3.229629749614999;

// L_{1/2} quasinorm of the martingale of one random 1/2-atom; calibrated on
// seeds 0..99, support levels 4..8, frozen at 2x the maximum.
inline constexpr double kAtomQuasinormBound = 1.376853768765552;

// hardy_quasinorm(F, 1/2)^{1/2} <= multiple * sum_k lambda_k^{1/2} for
// counterexample specs; calibrated on alpha/beta, scales 4..10, frozen at 2x.
inline constexpr double kCertificateMultiple = 1.0867679088384132;

// Regression lock for the blow-up growth table T(s), recorded from the first
// run (deterministic; compared with tolerance 1e-9).
inline constexpr unsigned kBlowupMinScale = 4;
inline constexpr unsigned kBlowupMaxScale = 10;
inline constexpr double kBlowupGrowthBeta[] = {1.3850511125071356, 1.6521787533052716, 1.9043629918902345, 2.1494935130553054, 2.38924043923104, 2.6234726338858199, 2.8522174311610642};
inline constexpr double kBlowupGrowthAlpha[] = {1.5944879629607371, 1.8803968139155098, 2.1550099556607392, 2.4223391347461591, 2.68551237445554, 2.9442401373270735, 3.1985023999293336};

// --- end calibrated block ---------------------------------------------------

}  // namespace wf::frozen
