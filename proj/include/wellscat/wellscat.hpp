#pragma once

/// Umbrella include for the whole library.

#include "emit.hpp"
#include "io.hpp"
#include "model_l2.hpp"
#include "ode.hpp"
#include "parallel.hpp"
#include "potentials.hpp"
#include "radial.hpp"
#include "rootfind.hpp"
#include "scattering.hpp"
#include "specfun.hpp"
#include "transparency.hpp"
#include "version.hpp"
