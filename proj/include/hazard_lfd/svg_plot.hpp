#pragma once
// Standalone SVG renderings. Travel runs left to right; lateral offset
// grows upwards. Output depends only on the input document.

#include <string>

#include "hazard_lfd/constraints.hpp"
#include "hazard_lfd/keyframe.hpp"

namespace hazard_lfd {

/// Road limits, hazard footprints, both lateral bounds and the mean.
[[nodiscard]] std::string envelope_to_svg(const ConstraintEnvelope& env);

/// Hazard-centric key-frames with the mean +/- sigma curves and the
/// trigger distance.
[[nodiscard]] std::string model_to_svg(const ScenarioModel& model);

}  // namespace hazard_lfd
