#pragma once

/// @file tspga.hpp
/// @brief Umbrella header.

#include "errors.hpp"
#include "evolve.hpp"
#include "experiment.hpp"
#include "operators.hpp"
#include "population.hpp"
#include "rng.hpp"
#include "tsplib.hpp"
