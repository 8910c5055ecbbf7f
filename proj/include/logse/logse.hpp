#pragma once

#include "logse/analytic.hpp"
#include "logse/errors.hpp"
#include "logse/grid.hpp"
#include "logse/observables.hpp"
#include "logse/scales.hpp"
#include "logse/special_functions.hpp"
#include "logse/wavefunction.hpp"
#include "logse/numerics/imaginary_time.hpp"
#include "logse/numerics/minimal_model.hpp"
#include "logse/numerics/operators.hpp"
#include "logse/numerics/poisson.hpp"
#include "logse/numerics/real_time.hpp"
#include "logse/numerics/solver_options.hpp"
#include "logse/numerics/tridiagonal.hpp"
