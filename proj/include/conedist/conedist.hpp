#pragma once

// Umbrella header: distance from a point to a finitely generated cone in the
// nonnegative orthant, solved by Frank-Wolfe on a hyperplane slice.

#include "conedist/bench.hpp"
#include "conedist/blp.hpp"
#include "conedist/errors.hpp"
#include "conedist/generator.hpp"
#include "conedist/instance.hpp"
#include "conedist/io.hpp"
#include "conedist/lmo.hpp"
#include "conedist/nnls.hpp"
#include "conedist/slice.hpp"
#include "conedist/solver.hpp"
#include "conedist/types.hpp"
