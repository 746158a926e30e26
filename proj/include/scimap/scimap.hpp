// Umbrella header: the full toolkit in one include.
#pragma once

#include "scimap/common.hpp"
#include "scimap/corpus.hpp"
#include "scimap/csv.hpp"
#include "scimap/dynamic_layout.hpp"
#include "scimap/graph.hpp"
#include "scimap/graph_stats.hpp"
#include "scimap/infotheory.hpp"
#include "scimap/layout.hpp"
#include "scimap/matrix.hpp"
#include "scimap/pajek.hpp"
#include "scimap/svg_render.hpp"
#include "scimap/version.hpp"
