#pragma once

#include "ltesim/channel.hpp"
#include "ltesim/config.hpp"
#include "ltesim/cqi.hpp"
#include "ltesim/engine.hpp"
#include "ltesim/kalman.hpp"
#include "ltesim/mat3.hpp"
#include "ltesim/metrics.hpp"
#include "ltesim/rng.hpp"
#include "ltesim/scheduler.hpp"
#include "ltesim/sweep.hpp"
#include "ltesim/trace.hpp"
#include "ltesim/traffic.hpp"
#include "ltesim/world.hpp"
