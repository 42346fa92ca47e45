#pragma once

#include "gxrepair/bitmatrix.hpp"
#include "gxrepair/consistency.hpp"
#include "gxrepair/constraints.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/evaluator.hpp"
#include "gxrepair/expr.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/graph_json.hpp"
#include "gxrepair/multiset.hpp"
#include "gxrepair/subset_repair.hpp"
#include "gxrepair/superset_repair.hpp"
#include "gxrepair/syntax.hpp"
#include "gxrepair/testgen.hpp"
#include "gxrepair/weights.hpp"
