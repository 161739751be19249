// Umbrella header.

#pragma once

#include "scenario_forge/alert_model.hpp"
#include "scenario_forge/correlation_graph.hpp"
#include "scenario_forge/evaluation.hpp"
#include "scenario_forge/export.hpp"
#include "scenario_forge/grouping.hpp"
#include "scenario_forge/ingestion.hpp"
#include "scenario_forge/pipeline.hpp"
#include "scenario_forge/scenario_mapping.hpp"
#include "scenario_forge/synth_gen.hpp"
