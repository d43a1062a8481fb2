#pragma once

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"
#include "macroq/scenario.hpp"
#include "macroq/numerics.hpp"
#include "macroq/qm_decoherence.hpp"
#include "macroq/collapse_models.hpp"
#include "macroq/expansion.hpp"
#include "macroq/testability.hpp"
#include "macroq/vacuum.hpp"
#include "macroq/mission.hpp"
