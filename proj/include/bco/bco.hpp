#pragma once

#include "bco/adversary.hpp"
#include "bco/bgd.hpp"
#include "bco/body_sampling.hpp"
#include "bco/bounds.hpp"
#include "bco/convex_body.hpp"
#include "bco/cost.hpp"
#include "bco/descent.hpp"
#include "bco/estimator.hpp"
#include "bco/experiment.hpp"
#include "bco/oracle.hpp"
#include "bco/random_stream.hpp"
#include "bco/reshape.hpp"
#include "bco/statistics.hpp"
#include "bco/types.hpp"
