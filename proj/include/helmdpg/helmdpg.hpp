#pragma once

/// Umbrella header for the library (the CLI front end lives in helmdpg/cli/run.hpp).

#include "helmdpg/errors.hpp"
#include "helmdpg/numkit/precision.hpp"
#include "helmdpg/numkit/complex.hpp"
#include "helmdpg/numkit/matrix.hpp"
#include "helmdpg/numkit/quadrature.hpp"
#include "helmdpg/numkit/linalg.hpp"
#include "helmdpg/refelem/legendre.hpp"
#include "helmdpg/refelem/bases.hpp"
#include "helmdpg/refelem/tabulate.hpp"
#include "helmdpg/localforms/dpg_element.hpp"
#include "helmdpg/localforms/condense.hpp"
#include "helmdpg/localforms/lowest_order_elements.hpp"
#include "helmdpg/assembly/mesh.hpp"
#include "helmdpg/assembly/exact_solution.hpp"
#include "helmdpg/assembly/solve.hpp"
#include "helmdpg/assembly/drivers.hpp"
#include "helmdpg/stencil/stencil.hpp"
#include "helmdpg/dispersion/symbol.hpp"
#include "helmdpg/dispersion/roots.hpp"
#include "helmdpg/dispersion/sweeps.hpp"
#include "helmdpg/io/parallel.hpp"
#include "helmdpg/io/csv.hpp"
