#pragma once
// Umbrella header.

#include "pathtriple/algebra.hpp"
#include "pathtriple/bench.hpp"
#include "pathtriple/catalog.hpp"
#include "pathtriple/cost_model.hpp"
#include "pathtriple/dictionary.hpp"
#include "pathtriple/disk_store.hpp"
#include "pathtriple/errors.hpp"
#include "pathtriple/executor.hpp"
#include "pathtriple/join_baseline.hpp"
#include "pathtriple/load.hpp"
#include "pathtriple/ntriples.hpp"
#include "pathtriple/partition.hpp"
#include "pathtriple/path_eval.hpp"
#include "pathtriple/path_pattern.hpp"
#include "pathtriple/planner.hpp"
#include "pathtriple/sparql.hpp"
#include "pathtriple/synth.hpp"
#include "pathtriple/term.hpp"
#include "pathtriple/topo_graph.hpp"
#include "pathtriple/triple.hpp"
