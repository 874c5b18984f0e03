#pragma once

#include "zmlab/errors.hpp"
#include "zmlab/radial.hpp"
#include "zmlab/zero_mode.hpp"
#include "zmlab/functionals.hpp"
#include "zmlab/planar.hpp"
#include "zmlab/bounds.hpp"
#include "zmlab/inequalities.hpp"
#include "zmlab/optimize.hpp"
#include "zmlab/verify.hpp"
