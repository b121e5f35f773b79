#ifndef SUBRAD_POLYLOG_HPP
#define SUBRAD_POLYLOG_HPP

#include "subrad/types.hpp"

namespace subrad {

// Clausen function Cl_2(theta) = sum_k sin(k theta)/k^2.
double clausen2(double theta);

// Li_n(e^{i theta}) for n = 1, 2, 3. Li_1 diverges at theta = 0 mod 2pi;
// callers are expected to stay off that anomaly.
cdouble polylog_unit(int order, double theta);

// zeta(s) for even integer s >= 2 (used by the Clausen-type series).
double zeta_even(int s);

} // namespace subrad

#endif // SUBRAD_POLYLOG_HPP
