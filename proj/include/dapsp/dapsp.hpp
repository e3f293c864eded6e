#pragma once

#include "dapsp/dag_reach.hpp"
#include "dapsp/dynamic_apsp.hpp"
#include "dapsp/errors.hpp"
#include "dapsp/graph.hpp"
#include "dapsp/hitting.hpp"
#include "dapsp/lex_weight.hpp"
#include "dapsp/mod_field.hpp"
#include "dapsp/path_tree.hpp"
#include "dapsp/phase.hpp"
#include "dapsp/sssp.hpp"
