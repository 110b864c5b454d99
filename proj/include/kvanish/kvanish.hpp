#pragma once

// Umbrella header for the library (the oracle and CLI headers are separate).

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/matrix.hpp"
#include "kvanish/roots.hpp"
#include "kvanish/surface.hpp"
#include "kvanish/vanishing.hpp"
