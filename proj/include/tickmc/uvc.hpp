// Case study: a UV-C light-treatment robot sharing a vineyard row with a
// human worker.
//
// Three machines, updated Human -> ODS -> Robot within each tick:
//   Human  walks through nested zones around the robot
//          (outOfRange -> inGreen -> inYellow -> inRed) and retreats from the
//          red zone only when aware of the risk;
//   ODS    (obstacle detection system) re-senses the human's zone every tick,
//          reporting green-zone presence with accuracy p_ods_green and
//          yellow-or-red presence (reported as yellow) with p_ods_yellow;
//   Robot  alternates long row-treatment stretches with short row
//          transitions (geometric sojourns, expected ratio
//          p_transition_ratio : 1), pauses while the ODS reports a detection
//          and resumes to its pre-pause activity when the report clears.
// The hazard of interest is the robot transitioning between rows (UV-C
// emitters exposed) while the human stands in the red zone.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "tickmc/model.hpp"

namespace tickmc {

struct AwarenessLevel {
  std::string name;
  double p_approach_robot;   // outOfRange -> inGreen per tick
  double p_approach_yellow;  // inGreen -> inYellow per tick
  double p_approach_red;     // inYellow -> inRed per tick
};

struct OdsProfile {
  std::string name;
  double p_ods_green;   // detection accuracy, human in green zone
  double p_ods_yellow;  // detection accuracy, human in yellow or red zone
};

// Nested safety zones around the robot, innermost last.
struct Zone {
  std::string name;         // domain value of shuman
  std::string description;  // distance band
};

struct ZoneModel {
  std::vector<Zone> zones;
};

enum class HazardSeverity { negligible, marginal, critical, catastrophic };
enum class Occurrence { improbable, remote, occasional, probable, frequent };
enum class RiskClass { low, medium, high, intolerable };

struct Hazard {
  std::string code;
  std::string situation;
  std::string failure;
  std::string effect;
  std::string consequence;
  HazardSeverity severity = HazardSeverity::negligible;
  Occurrence occurrence = Occurrence::improbable;
};

struct RiskAssessment {
  RiskClass risk = RiskClass::low;
  bool tolerable = true;
};

struct SilResult {
  double rrf = 0.0;  // risk reduction factor; +inf when pMitigated == 0
  int sil = 0;       // 0 = below SIL1, otherwise 1..4
};

// The three awareness rows and three ODS quality profiles of the study.
const std::array<AwarenessLevel, 3>& awareness_levels();  // deliberate, aware, lessAware
const std::array<OdsProfile, 3>& ods_profiles();          // highPerformance, normal, failure

const ZoneModel& zone_model();

// Builds the three-machine network with all eight constants left open:
// p_approach_robot, p_approach_yellow, p_approach_red, p_aware_of_risk,
// p_ods_green, p_ods_yellow, p_transition_ratio, N_ticks.
Network build_uvc_network();

// The nine scenario configurations (awareness x ODS profile), each binding
// all eight constants; shared values are p_aware_of_risk = 0.01 and
// p_transition_ratio = 10.  Scenario names are "<awareness>_<ods>".
std::vector<ScenarioConfig> scenario_table(int n_ticks = 30);

// Risk reduction factor pBaseline / pMitigated mapped onto safety integrity
// levels: [10,100) -> SIL1, [100,1000) -> SIL2, [1000,10000) -> SIL3,
// >= 10000 -> SIL4, below 10 -> none.  pMitigated == 0 yields rrf = +inf and
// SIL4.  Throws Error{out_of_range} when pBaseline <= 0 or pMitigated < 0.
SilResult risk_reduction_and_sil(double p_baseline, double p_mitigated);

// Bundled 4-severity x 5-occurrence risk matrix; low and medium are
// tolerable.  The full matrix is documented in the README and frozen by test.
RiskAssessment risk_matrix_level(HazardSeverity severity, Occurrence occurrence);

// Hazard log entries for the study; contains the lateral-approach
// late-detection hazard F-G5 (critical, probable -> intolerable without
// mitigation).
const std::vector<Hazard>& hazard_registry();

const char* to_string(HazardSeverity severity);
const char* to_string(Occurrence occurrence);
const char* to_string(RiskClass risk);

}  // namespace tickmc
