#pragma once

#include "spreal/error.hpp"
#include "spreal/field.hpp"
#include "spreal/matrix.hpp"
#include "spreal/random.hpp"
#include "spreal/polynomial.hpp"
#include "spreal/jordan.hpp"
#include "spreal/canonical.hpp"
#include "spreal/reality.hpp"
#include "spreal/skew_hamiltonian.hpp"
