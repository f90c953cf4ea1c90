#pragma once

#include "legbound/bounds.hpp"
#include "legbound/descriptor.hpp"
#include "legbound/errors.hpp"
#include "legbound/experiments.hpp"
#include "legbound/io.hpp"
#include "legbound/legendre.hpp"
#include "legbound/piecewise_function.hpp"
#include "legbound/quadrature.hpp"
#include "legbound/transform.hpp"
