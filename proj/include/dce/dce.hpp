#pragma once

#include "dce/algorithm.hpp"
#include "dce/compression.hpp"
#include "dce/config.hpp"
#include "dce/csv_io.hpp"
#include "dce/estimators.hpp"
#include "dce/experiment.hpp"
#include "dce/metrics.hpp"
#include "dce/recovery.hpp"
#include "dce/rng.hpp"
#include "dce/signal.hpp"
#include "dce/topology.hpp"
#include "dce/types.hpp"
