#pragma once

// Exact computation of the maximal Lie invariance algebras of linear
// second-order ODE systems x'' = A x' + B x + C(t) with commuting constant
// coefficient matrices, over the complex or real field.

#include "liesym/algebra.hpp"
#include "liesym/closure.hpp"
#include "liesym/commutant.hpp"
#include "liesym/counting.hpp"
#include "liesym/exp_poly.hpp"
#include "liesym/fundamental.hpp"
#include "liesym/io.hpp"
#include "liesym/matrix.hpp"
#include "liesym/multipoly.hpp"
#include "liesym/polynomial.hpp"
#include "liesym/quadext.hpp"
#include "liesym/rational.hpp"
#include "liesym/report.hpp"
#include "liesym/smith.hpp"
#include "liesym/structure.hpp"
#include "liesym/vector_field.hpp"
#include "liesym/verify.hpp"
