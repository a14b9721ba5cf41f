#pragma once

#include "bipack/conditions.hpp"
#include "bipack/embedder.hpp"
#include "bipack/experiment.hpp"
#include "bipack/feasibility.hpp"
#include "bipack/flow.hpp"
#include "bipack/generators.hpp"
#include "bipack/graph.hpp"
#include "bipack/io.hpp"
#include "bipack/numeric.hpp"
#include "bipack/oracle.hpp"
#include "bipack/random.hpp"
#include "bipack/sequences.hpp"
