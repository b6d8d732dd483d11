// Copyright 2026 The comfort_avoid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMFORT_AVOID__SIMULATION_HPP_
#define COMFORT_AVOID__SIMULATION_HPP_

#include "comfort_avoid/comfort_model.hpp"
#include "comfort_avoid/scenario.hpp"
#include "comfort_avoid/sim_log.hpp"

#include <vector>

namespace comfort_avoid
{

/// Closed loop: the planner replans every planner.replan_period on the current
/// state, the tracker follows the latest plan at tracker.dt and the plant is
/// stepped with the tracker output. The classifier is built from cfg.classifier.
SimLog run_scenario(const ScenarioConfig & cfg);

/// Same loop with a caller-supplied classifier.
SimLog run_scenario(const ScenarioConfig & cfg, const ClassifierModel & model);

/// Per-row comfort class from finite-difference features of the logged states.
std::vector<ComfortClass> classify_rows(const std::vector<SimRow> & rows, const ClassifierModel & model);

}  // namespace comfort_avoid

#endif  // COMFORT_AVOID__SIMULATION_HPP_
