#pragma once

// Everything except the JSON projections (elgas/json_io.hpp), which need json.hpp.

#include "elgas/vec3.hpp"
#include "elgas/lattice.hpp"
#include "elgas/symmetry.hpp"
#include "elgas/potential.hpp"
#include "elgas/quadrature.hpp"
#include "elgas/matrix_function.hpp"
#include "elgas/rank1.hpp"
#include "elgas/parallel.hpp"
#include "elgas/quasiboson.hpp"
#include "elgas/momentum.hpp"
#include "elgas/energy.hpp"
#include "elgas/dvlimit.hpp"
#include "elgas/verify.hpp"
