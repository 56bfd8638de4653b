#pragma once

#include "lorentzfd/constraints.hpp"
#include "lorentzfd/cover.hpp"
#include "lorentzfd/disc.hpp"
#include "lorentzfd/error.hpp"
#include "lorentzfd/export.hpp"
#include "lorentzfd/pairing.hpp"
#include "lorentzfd/pipeline.hpp"
#include "lorentzfd/polyhedron.hpp"
#include "lorentzfd/quadric.hpp"
#include "lorentzfd/reduction.hpp"
#include "lorentzfd/series.hpp"
#include "lorentzfd/vec3.hpp"
