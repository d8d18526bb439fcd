#pragma once

#include "kulikov/degeneration_data.hpp"
#include "kulikov/error.hpp"
#include "kulikov/fan_engine.hpp"
#include "kulikov/lattice_core.hpp"
#include "kulikov/matrix.hpp"
#include "kulikov/monodromy.hpp"
#include "kulikov/numeric.hpp"
#include "kulikov/strata_complex.hpp"
