#pragma once

#include "nctorus/config.hpp"
#include "nctorus/core/errors.hpp"
#include "nctorus/core/expr_parser.hpp"
#include "nctorus/core/linalg.hpp"
#include "nctorus/core/polynomial.hpp"
#include "nctorus/core/rational.hpp"
#include "nctorus/core/rational_function.hpp"
#include "nctorus/curvature/assemble.hpp"
#include "nctorus/curvature/classical_check.hpp"
#include "nctorus/curvature/package.hpp"
#include "nctorus/curvature/section4.hpp"
#include "nctorus/curvature/trace.hpp"
#include "nctorus/rearrangement/closed_form.hpp"
#include "nctorus/rearrangement/descriptor.hpp"
#include "nctorus/rearrangement/modular_function.hpp"
#include "nctorus/rearrangement/quadrature.hpp"
#include "nctorus/spectral/curvature_trace.hpp"
#include "nctorus/spectral/dirac.hpp"
#include "nctorus/spectral/heat.hpp"
#include "nctorus/spectral/modular_apply.hpp"
#include "nctorus/symbol/calculus.hpp"
#include "nctorus/symbol/classical.hpp"
#include "nctorus/symbol/symbol_expr.hpp"
#include "nctorus/torus/gns.hpp"
#include "nctorus/torus/random.hpp"
#include "nctorus/torus/torus_element.hpp"
