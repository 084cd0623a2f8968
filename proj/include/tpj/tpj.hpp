#pragma once

// Umbrella header: the whole library in one include.

#include "tpj/battery.hpp"
#include "tpj/exchange.hpp"
#include "tpj/families.hpp"
#include "tpj/greedy.hpp"
#include "tpj/json_io.hpp"
#include "tpj/jump.hpp"
#include "tpj/lp.hpp"
#include "tpj/multigraph.hpp"
#include "tpj/packing.hpp"
#include "tpj/paths.hpp"
#include "tpj/polytope.hpp"
#include "tpj/rational.hpp"
