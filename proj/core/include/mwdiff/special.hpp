#pragma once

namespace mwdiff::special {

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
// Series expansion below the crossover, continued fraction above.
// Relative accuracy ~1e-14 across the domain; underflows to 0 for x > ~745.
double exp_int_e1(double x);

} // namespace mwdiff::special
