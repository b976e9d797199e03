#pragma once

#include "complex_explore.hpp"
#include "cubic.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "measures.hpp"
#include "specfun.hpp"
#include "tridiag.hpp"
