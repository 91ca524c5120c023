#pragma once

#include "adopt/adoption.hpp"
#include "adopt/bounds.hpp"
#include "adopt/flow.hpp"
#include "adopt/generators.hpp"
#include "adopt/guarantee.hpp"
#include "adopt/heuristics.hpp"
#include "adopt/io.hpp"
#include "adopt/metric.hpp"
#include "adopt/mincost_flow.hpp"
#include "adopt/mst.hpp"
#include "adopt/oracle.hpp"
#include "adopt/prufer.hpp"
#include "adopt/report.hpp"
#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"
