#pragma once

#include "specgeom/analysis.hpp"
#include "specgeom/core.hpp"
#include "specgeom/eigensolver.hpp"
#include "specgeom/fem_scalar.hpp"
#include "specgeom/fem_vector.hpp"
#include "specgeom/geometry.hpp"
#include "specgeom/mesh.hpp"
#include "specgeom/report.hpp"
#include "specgeom/sparse.hpp"
#include "specgeom/triangulate.hpp"
