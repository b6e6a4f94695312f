#pragma once

// Umbrella header: pseudo-spectral tools for the 2-D inhomogeneous
// incompressible Navier-Stokes system on the torus - dyadic Littlewood-Paley
// analysis, the background/correction solver split, diagnostic monitors and
// density-patch tracking.

#include "lpns2d/artifacts.hpp"
#include "lpns2d/config.hpp"
#include "lpns2d/estimates_monitor.hpp"
#include "lpns2d/field_io.hpp"
#include "lpns2d/inhom_solver.hpp"
#include "lpns2d/littlewood_paley.hpp"
#include "lpns2d/ns_solver.hpp"
#include "lpns2d/paraproduct.hpp"
#include "lpns2d/patch_tracker.hpp"
#include "lpns2d/pressure_solver.hpp"
#include "lpns2d/random_fields.hpp"
#include "lpns2d/scenarios.hpp"
#include "lpns2d/time_norms.hpp"
#include "lpns2d/transport.hpp"
#include "lpns2d/viscosity.hpp"
