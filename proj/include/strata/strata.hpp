#pragma once

#include "strata/dual_graph.hpp"
#include "strata/canonical.hpp"
#include "strata/json_io.hpp"
#include "strata/enumeration.hpp"
#include "strata/lattice.hpp"
#include "strata/complex.hpp"
#include "strata/report_io.hpp"
#include "strata/reproduction.hpp"
