#pragma once

#include "arith.hpp"
#include "bounds.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "pell.hpp"
#include "poly.hpp"
#include "quadratic_ring.hpp"
#include "quartic.hpp"
#include "real.hpp"
#include "reduction.hpp"
#include "thue.hpp"
