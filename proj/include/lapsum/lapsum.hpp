#pragma once

#include "lapsum/complex_gamma.hpp"
#include "lapsum/engine.hpp"
#include "lapsum/error.hpp"
#include "lapsum/ilt.hpp"
#include "lapsum/kernel_library.hpp"
#include "lapsum/quadrature.hpp"
#include "lapsum/summation_oracles.hpp"
#include "lapsum/transform_catalog.hpp"
#include "lapsum/types.hpp"
