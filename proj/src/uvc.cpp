#include "tickmc/uvc.hpp"

#include <cmath>
#include <limits>

#include "tickmc/error.hpp"

namespace tickmc {

namespace {

ProbExpr::Ptr lit(std::int64_t num, std::int64_t den = 1) {
  return ProbExpr::lit(*Rational::make(num, den), {});
}

ProbExpr::Ptr cref(const std::string& name) { return ProbExpr::cref(name, {}); }

// 1 - c
ProbExpr::Ptr one_minus(const std::string& name) {
  return ProbExpr::binary(ProbExpr::Op::sub, lit(1), cref(name), {});
}

// 1 / c
ProbExpr::Ptr inverse(const std::string& name) {
  return ProbExpr::binary(ProbExpr::Op::div, lit(1), cref(name), {});
}

// 1 - 1 / c
ProbExpr::Ptr one_minus_inverse(const std::string& name) {
  return ProbExpr::binary(ProbExpr::Op::sub, lit(1), inverse(name), {});
}

GuardExpr::Ptr var_is(const std::string& var, const std::string& value) {
  return GuardExpr::atom(GuardExpr::Op::eq, var, value, {});
}

GuardExpr::Ptr var_is_not(const std::string& var, const std::string& value) {
  return GuardExpr::atom(GuardExpr::Op::ne, var, value, {});
}

Branch branch(ProbExpr::Ptr weight, std::string target,
              std::vector<Update> updates = {}) {
  Branch b;
  b.weight = std::move(weight);
  b.target = std::move(target);
  b.updates = std::move(updates);
  return b;
}

Transition transition(std::string source, GuardExpr::Ptr guard,
                      std::vector<Branch> branches) {
  Transition t;
  t.source = std::move(source);
  t.guard = guard ? std::move(guard) : GuardExpr::truth({});
  t.branches = std::move(branches);
  return t;
}

ConstantDef constant(std::string name, ConstKind kind) {
  ConstantDef c;
  c.name = std::move(name);
  c.kind = kind;
  return c;
}

}  // namespace

const std::array<AwarenessLevel, 3>& awareness_levels() {
  static const std::array<AwarenessLevel, 3> levels{{
      {"deliberate", 1.0, 1.0, 1.0},
      {"aware", 0.5, 0.5, 0.3},
      {"lessAware", 0.7, 0.7, 0.5},
  }};
  return levels;
}

const std::array<OdsProfile, 3>& ods_profiles() {
  static const std::array<OdsProfile, 3> profiles{{
      {"highPerformance", 0.99, 0.99},
      {"normal", 0.4, 0.7},
      {"failure", 0.0, 0.0},
  }};
  return profiles;
}

const ZoneModel& zone_model() {
  static const ZoneModel model{{
      {"outOfRange", "beyond the green boundary (more than 7 m); no interaction potential"},
      {"inGreen", "more than 7 m from the robot; visible and monitorable"},
      {"inYellow", "between 3 and 7 m from the robot; approach monitored"},
      {"inRed", "0-3 m from the robot; harm may occur"},
  }};
  return model;
}

Network build_uvc_network() {
  Network net;

  net.domains.push_back({"HumanZone", {"outOfRange", "inGreen", "inYellow", "inRed"}, {}});
  net.domains.push_back(
      {"OdsVerdict", {"noHumanDetected", "humanDetectedInGreen", "humanDetectedInYellow"}, {}});
  net.domains.push_back({"RobotMode", {"alongRow", "transitionRow", "paused"}, {}});

  net.shared_vars.push_back({"shuman", "HumanZone", "outOfRange", {}});
  net.shared_vars.push_back({"sods", "OdsVerdict", "noHumanDetected", {}});
  net.shared_vars.push_back({"srobot", "RobotMode", "alongRow", {}});

  net.constants.push_back(constant("p_approach_robot", ConstKind::probability));
  net.constants.push_back(constant("p_approach_yellow", ConstKind::probability));
  net.constants.push_back(constant("p_approach_red", ConstKind::probability));
  net.constants.push_back(constant("p_aware_of_risk", ConstKind::probability));
  net.constants.push_back(constant("p_ods_green", ConstKind::probability));
  net.constants.push_back(constant("p_ods_yellow", ConstKind::probability));
  net.constants.push_back(constant("p_transition_ratio", ConstKind::ratio));
  net.constants.push_back(constant("N_ticks", ConstKind::count));
  net.tick_horizon = "N_ticks";

  // Human: advance inward with the approach probability, stay otherwise;
  // retreat from the red zone to yellow only when aware of the risk.
  {
    MachineDef m;
    m.name = "Human";
    m.states = {"OutOfRange", "InGreenZone", "InYellowZone", "InRedZone"};
    m.initial = "OutOfRange";
    m.transitions.push_back(transition(
        "OutOfRange", nullptr,
        {branch(cref("p_approach_robot"), "InGreenZone", {{"shuman", "inGreen", {}}}),
         branch(one_minus("p_approach_robot"), "OutOfRange")}));
    m.transitions.push_back(transition(
        "InGreenZone", nullptr,
        {branch(cref("p_approach_yellow"), "InYellowZone", {{"shuman", "inYellow", {}}}),
         branch(one_minus("p_approach_yellow"), "InGreenZone")}));
    m.transitions.push_back(transition(
        "InYellowZone", nullptr,
        {branch(cref("p_approach_red"), "InRedZone", {{"shuman", "inRed", {}}}),
         branch(one_minus("p_approach_red"), "InYellowZone")}));
    m.transitions.push_back(transition(
        "InRedZone", nullptr,
        {branch(cref("p_aware_of_risk"), "InYellowZone", {{"shuman", "inYellow", {}}}),
         branch(one_minus("p_aware_of_risk"), "InRedZone")}));
    m.writes = derive_writes(m);
    net.machines.push_back(std::move(m));
  }

  // ODS: detection accuracy gates the acquisition of an undetected human --
  // green-zone presence acquires with p_ods_green, yellow-or-red presence
  // with p_ods_yellow (reported as yellow; there is no red report).  Once
  // acquired, the report tracks the human's zone until they leave the
  // operating range, which resets the system to searching.
  {
    MachineDef m;
    m.name = "ODS";
    m.states = {"NoHumanDetected", "HumanDetectedInGreen", "HumanDetectedInYellow"};
    m.initial = "NoHumanDetected";
    const auto in_yellow_or_red = [&] {
      return GuardExpr::binary(GuardExpr::Op::disj, var_is("shuman", "inYellow"),
                               var_is("shuman", "inRed"), {});
    };
    m.transitions.push_back(transition(
        "NoHumanDetected", var_is("shuman", "outOfRange"),
        {branch(lit(1), "NoHumanDetected", {{"sods", "noHumanDetected", {}}})}));
    m.transitions.push_back(transition(
        "NoHumanDetected", var_is("shuman", "inGreen"),
        {branch(cref("p_ods_green"), "HumanDetectedInGreen",
                {{"sods", "humanDetectedInGreen", {}}}),
         branch(one_minus("p_ods_green"), "NoHumanDetected",
                {{"sods", "noHumanDetected", {}}})}));
    m.transitions.push_back(transition(
        "NoHumanDetected", in_yellow_or_red(),
        {branch(cref("p_ods_yellow"), "HumanDetectedInYellow",
                {{"sods", "humanDetectedInYellow", {}}}),
         branch(one_minus("p_ods_yellow"), "NoHumanDetected",
                {{"sods", "noHumanDetected", {}}})}));
    for (const std::string& source : {std::string("HumanDetectedInGreen"),
                                      std::string("HumanDetectedInYellow")}) {
      m.transitions.push_back(transition(
          source, var_is("shuman", "outOfRange"),
          {branch(lit(1), "NoHumanDetected", {{"sods", "noHumanDetected", {}}})}));
      m.transitions.push_back(transition(
          source, var_is("shuman", "inGreen"),
          {branch(lit(1), "HumanDetectedInGreen",
                  {{"sods", "humanDetectedInGreen", {}}})}));
      m.transitions.push_back(transition(
          source, in_yellow_or_red(),
          {branch(lit(1), "HumanDetectedInYellow",
                  {{"sods", "humanDetectedInYellow", {}}})}));
    }
    m.writes = derive_writes(m);
    net.machines.push_back(std::move(m));
  }

  // Robot: long row stretches (geometric sojourn, expected 1/ratio exits per
  // tick) alternate with single-tick row transitions; any detection report
  // pauses the robot, and it resumes to the activity it paused from.
  {
    MachineDef m;
    m.name = "Robot";
    m.states = {"MoveAlongRow", "TransitionBetweenRows", "PausedFromRow",
                "PausedFromTransition"};
    m.initial = "MoveAlongRow";
    m.transitions.push_back(transition(
        "MoveAlongRow", var_is("sods", "noHumanDetected"),
        {branch(inverse("p_transition_ratio"), "TransitionBetweenRows",
                {{"srobot", "transitionRow", {}}}),
         branch(one_minus_inverse("p_transition_ratio"), "MoveAlongRow")}));
    m.transitions.push_back(transition(
        "MoveAlongRow", var_is_not("sods", "noHumanDetected"),
        {branch(lit(1), "PausedFromRow", {{"srobot", "paused", {}}})}));
    m.transitions.push_back(transition(
        "TransitionBetweenRows", var_is("sods", "noHumanDetected"),
        {branch(lit(1), "MoveAlongRow", {{"srobot", "alongRow", {}}})}));
    m.transitions.push_back(transition(
        "TransitionBetweenRows", var_is_not("sods", "noHumanDetected"),
        {branch(lit(1), "PausedFromTransition", {{"srobot", "paused", {}}})}));
    m.transitions.push_back(transition(
        "PausedFromRow", var_is("sods", "noHumanDetected"),
        {branch(lit(1), "MoveAlongRow", {{"srobot", "alongRow", {}}})}));
    m.transitions.push_back(transition(
        "PausedFromRow", var_is_not("sods", "noHumanDetected"),
        {branch(lit(1), "PausedFromRow")}));
    m.transitions.push_back(transition(
        "PausedFromTransition", var_is("sods", "noHumanDetected"),
        {branch(lit(1), "TransitionBetweenRows", {{"srobot", "transitionRow", {}}})}));
    m.transitions.push_back(transition(
        "PausedFromTransition", var_is_not("sods", "noHumanDetected"),
        {branch(lit(1), "PausedFromTransition")}));
    m.writes = derive_writes(m);
    net.machines.push_back(std::move(m));
  }

  return net;
}

std::vector<ScenarioConfig> scenario_table(int n_ticks) {
  std::vector<ScenarioConfig> configs;
  for (const AwarenessLevel& level : awareness_levels()) {
    for (const OdsProfile& profile : ods_profiles()) {
      ScenarioConfig cfg;
      cfg.name = level.name + "_" + profile.name;
      auto prob = [](double p) {
        return *Rational::make(static_cast<std::int64_t>(std::llround(p * 100.0)), 100);
      };
      cfg.bindings = {
          {"N_ticks", *Rational::make(n_ticks, 1)},
          {"p_approach_red", prob(level.p_approach_red)},
          {"p_approach_robot", prob(level.p_approach_robot)},
          {"p_approach_yellow", prob(level.p_approach_yellow)},
          {"p_aware_of_risk", *Rational::make(1, 100)},
          {"p_ods_green", prob(profile.p_ods_green)},
          {"p_ods_yellow", prob(profile.p_ods_yellow)},
          {"p_transition_ratio", *Rational::make(10, 1)},
      };
      configs.push_back(std::move(cfg));
    }
  }
  return configs;
}

SilResult risk_reduction_and_sil(double p_baseline, double p_mitigated) {
  if (!(p_baseline > 0.0)) {
    throw Error(ErrorKind::out_of_range, "baseline probability must be positive");
  }
  if (p_mitigated < 0.0) {
    throw Error(ErrorKind::out_of_range, "mitigated probability must not be negative");
  }
  SilResult result;
  result.rrf = p_mitigated == 0.0 ? std::numeric_limits<double>::infinity()
                                  : p_baseline / p_mitigated;
  if (result.rrf >= 10000.0) {
    result.sil = 4;
  } else if (result.rrf >= 1000.0) {
    result.sil = 3;
  } else if (result.rrf >= 100.0) {
    result.sil = 2;
  } else if (result.rrf >= 10.0) {
    result.sil = 1;
  } else {
    result.sil = 0;
  }
  return result;
}

RiskAssessment risk_matrix_level(HazardSeverity severity, Occurrence occurrence) {
  // Rows: severity; columns: improbable, remote, occasional, probable, frequent.
  static const RiskClass matrix[4][5] = {
      /* negligible   */ {RiskClass::low, RiskClass::low, RiskClass::low, RiskClass::medium,
                          RiskClass::medium},
      /* marginal     */ {RiskClass::low, RiskClass::low, RiskClass::medium, RiskClass::high,
                          RiskClass::high},
      /* critical     */ {RiskClass::low, RiskClass::medium, RiskClass::high,
                          RiskClass::intolerable, RiskClass::intolerable},
      /* catastrophic */ {RiskClass::medium, RiskClass::high, RiskClass::intolerable,
                          RiskClass::intolerable, RiskClass::intolerable},
  };
  RiskAssessment assessment;
  assessment.risk = matrix[static_cast<int>(severity)][static_cast<int>(occurrence)];
  assessment.tolerable =
      assessment.risk == RiskClass::low || assessment.risk == RiskClass::medium;
  return assessment;
}

const std::vector<Hazard>& hazard_registry() {
  static const std::vector<Hazard> registry{{
      "F-G5",
      "Robot at the end of the rows when a worker is approaching laterally",
      "Robot detects the human only when they are too close (less than 3.6 m)",
      "Robot stops using UV-C light too late",
      "Human is getting injured by the UV-C light",
      HazardSeverity::critical,
      Occurrence::probable,
  }};
  return registry;
}

const char* to_string(HazardSeverity severity) {
  switch (severity) {
    case HazardSeverity::negligible: return "negligible";
    case HazardSeverity::marginal: return "marginal";
    case HazardSeverity::critical: return "critical";
    case HazardSeverity::catastrophic: return "catastrophic";
  }
  return "negligible";
}

const char* to_string(Occurrence occurrence) {
  switch (occurrence) {
    case Occurrence::improbable: return "improbable";
    case Occurrence::remote: return "remote";
    case Occurrence::occasional: return "occasional";
    case Occurrence::probable: return "probable";
    case Occurrence::frequent: return "frequent";
  }
  return "improbable";
}

const char* to_string(RiskClass risk) {
  switch (risk) {
    case RiskClass::low: return "low";
    case RiskClass::medium: return "medium";
    case RiskClass::high: return "high";
    case RiskClass::intolerable: return "intolerable";
  }
  return "low";
}

}  // namespace tickmc
