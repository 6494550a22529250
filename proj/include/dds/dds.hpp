#pragma once

// Finite-domain constraint solving with decomposition during search.

#include "dds/count.hpp"
#include "dds/domain.hpp"
#include "dds/graph.hpp"
#include "dds/models/coloring.hpp"
#include "dds/models/oracle.hpp"
#include "dds/models/saw.hpp"
#include "dds/propagators.hpp"
#include "dds/search/engine.hpp"
#include "dds/search/heuristic.hpp"
#include "dds/search/stats.hpp"
#include "dds/search/trace.hpp"
#include "dds/search/tree.hpp"
#include "dds/spec.hpp"
#include "dds/state.hpp"
