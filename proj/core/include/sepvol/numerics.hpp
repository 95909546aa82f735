#pragma once

#include "sepvol/precision.hpp"

namespace sepvol::numerics {

// Natural log of Gamma(x) for x > 0, correct to within 2 ulp at ctx
// precision.  Stirling series with argument shift for small x.
Real log_gamma(const Real& x, PrecisionContext ctx = PrecisionContext());
Real log_gamma(double x, PrecisionContext ctx = PrecisionContext());

// gamma_k = sqrt(2) * Gamma((k+1)/2) / Gamma(k/2): the constant converting
// Gaussian averages into averages over the unit sphere S^{k-1}.
// Satisfies sqrt(k-1) < gamma_k < sqrt(k).
Real gamma_k(long k, PrecisionContext ctx = PrecisionContext());

// log of gamma_k, for use in log-space pipelines.
Real log_gamma_k(long k, PrecisionContext ctx = PrecisionContext());

// Natural log of the volume of the unit Euclidean ball in dimension m:
// log(pi^{m/2} / Gamma(m/2 + 1)).
Real log_ball_volume(long m, PrecisionContext ctx = PrecisionContext());

// log of prod_{j=1}^{d} Gamma(j), evaluated as sum_{k=1}^{d-1} (d-k) log k
// (the factorial product telescopes to prod k^{d-k}).
Real log_gamma_product_integers(long d,
                                PrecisionContext ctx = PrecisionContext());

}  // namespace sepvol::numerics
