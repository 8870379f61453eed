#pragma once

#include "corrquad/error_bounds.hpp"
#include "corrquad/errors.hpp"
#include "corrquad/expression.hpp"
#include "corrquad/integrand.hpp"
#include "corrquad/interval.hpp"
#include "corrquad/peano_kernels.hpp"
#include "corrquad/polynomial.hpp"
#include "corrquad/quadrature.hpp"
#include "corrquad/reference.hpp"
#include "corrquad/summation.hpp"
#include "corrquad/taylor_jet.hpp"
