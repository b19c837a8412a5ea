#pragma once

// Umbrella header for the circle-angle Willmore functionals library.

#include "cwf/circle.hpp"
#include "cwf/convex_hull.hpp"
#include "cwf/cycles.hpp"
#include "cwf/diagnostics.hpp"
#include "cwf/energy.hpp"
#include "cwf/generators.hpp"
#include "cwf/gradient.hpp"
#include "cwf/graph.hpp"
#include "cwf/linalg.hpp"
#include "cwf/mesh.hpp"
#include "cwf/mobius.hpp"
#include "cwf/obj_io.hpp"
#include "cwf/optimize.hpp"
#include "cwf/qp.hpp"
#include "cwf/serialize.hpp"
#include "cwf/topology.hpp"
