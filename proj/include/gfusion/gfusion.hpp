#pragma once

// Umbrella header: the whole library.

#include "gfusion/digest.hpp"
#include "gfusion/duality.hpp"
#include "gfusion/errors.hpp"
#include "gfusion/gen.hpp"
#include "gfusion/identities.hpp"
#include "gfusion/io.hpp"
#include "gfusion/linalg.hpp"
#include "gfusion/model.hpp"
#include "gfusion/operators.hpp"
#include "gfusion/pairs.hpp"
#include "gfusion/report.hpp"
#include "gfusion/rng.hpp"
