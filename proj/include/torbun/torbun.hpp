#pragma once

#include "torbun/algebra.hpp"
#include "torbun/bundle.hpp"
#include "torbun/cone.hpp"
#include "torbun/core.hpp"
#include "torbun/displacement.hpp"
#include "torbun/expression.hpp"
#include "torbun/fan.hpp"
#include "torbun/lattice.hpp"
#include "torbun/minkowski.hpp"
#include "torbun/piecewise.hpp"
#include "torbun/polyhedron.hpp"
#include "torbun/polynomial.hpp"
#include "torbun/presentation.hpp"
