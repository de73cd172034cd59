#pragma once

#include "angles.hpp"
#include "asymptotics.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "invariant.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "potential.hpp"
#include "qseries.hpp"
#include "quadrature.hpp"
#include "quantum_dilog.hpp"
#include "signed_log.hpp"
#include "specfun.hpp"
#include "weights.hpp"
