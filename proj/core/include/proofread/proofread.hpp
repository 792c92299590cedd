#pragma once

#include "proofread/analytic.hpp"
#include "proofread/core.hpp"
#include "proofread/energy.hpp"
#include "proofread/flux.hpp"
#include "proofread/general.hpp"
#include "proofread/montecarlo.hpp"
#include "proofread/rng.hpp"
#include "proofread/speed.hpp"
