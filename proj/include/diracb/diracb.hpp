#pragma once

#include "diracb/bounds.hpp"
#include "diracb/geometry.hpp"
#include "diracb/optimize.hpp"
#include "diracb/quadrature.hpp"
#include "diracb/sweep.hpp"
#include "diracb/torus_spectrum.hpp"
#include "diracb/uniformization.hpp"
