#pragma once

#include "possibility/approximation.hpp"
#include "possibility/continuous.hpp"
#include "possibility/discrete.hpp"
#include "possibility/error.hpp"
#include "possibility/inference.hpp"
#include "possibility/level_measure.hpp"
#include "possibility/measures.hpp"
#include "possibility/piecewise.hpp"
#include "possibility/simplex.hpp"
