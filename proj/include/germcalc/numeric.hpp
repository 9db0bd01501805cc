#pragma once
#include <gmpxx.h>

namespace germcalc {

// Exact scalars used throughout the library.  All arithmetic is
// arbitrary-precision; nothing anywhere touches floating point.
using Int = mpz_class;
using Rat = mpq_class;

}  // namespace germcalc
