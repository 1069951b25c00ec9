#pragma once
// Umbrella header.

#include "surface_map.hpp"
#include "generators.hpp"
#include "topology.hpp"
#include "surgery.hpp"
#include "domination.hpp"
#include "cylinder_tiles.hpp"
#include "sphere_dominator.hpp"
#include "pipeline.hpp"
