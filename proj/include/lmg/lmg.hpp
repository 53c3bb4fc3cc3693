#ifndef LMG_LMG_HPP
#define LMG_LMG_HPP

#include "lmg/analytic.hpp"
#include "lmg/errors.hpp"
#include "lmg/ground_state.hpp"
#include "lmg/half_integer.hpp"
#include "lmg/metrology.hpp"
#include "lmg/scaling.hpp"
#include "lmg/spin.hpp"
#include "lmg/sweep.hpp"
#include "lmg/tridiagonal.hpp"

#endif
