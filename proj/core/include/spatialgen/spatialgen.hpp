#pragma once

#include "spatialgen/circulant.hpp"
#include "spatialgen/dense.hpp"
#include "spatialgen/errors.hpp"
#include "spatialgen/fft.hpp"
#include "spatialgen/fractional.hpp"
#include "spatialgen/gmrf.hpp"
#include "spatialgen/grid.hpp"
#include "spatialgen/grid_io.hpp"
#include "spatialgen/levy.hpp"
#include "spatialgen/mcmc.hpp"
#include "spatialgen/point_io.hpp"
#include "spatialgen/pointproc.hpp"
#include "spatialgen/rng.hpp"
#include "spatialgen/suites.hpp"
#include "spatialgen/validate.hpp"
#include "spatialgen/version.hpp"
