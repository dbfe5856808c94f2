#pragma once

// Umbrella header: characters of the connected classical matrix groups from
// entries of powers of a numerically given element, with torus-coordinate
// oracles for verification.

#include "charclass/engine.hpp"
#include "charclass/errors.hpp"
#include "charclass/forms.hpp"
#include "charclass/groups.hpp"
#include "charclass/linalg.hpp"
#include "charclass/matrix.hpp"
#include "charclass/matrix_io.hpp"
#include "charclass/oracle.hpp"
