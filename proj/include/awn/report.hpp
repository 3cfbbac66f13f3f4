#pragma once

#include <json.hpp>

#include "awn/lifting.hpp"
#include "awn/vcgen.hpp"

namespace awn {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "awn-report/1";
inline constexpr const char* kTraceSchema = "awn-trace/1";

/// What a run was asked to do; echoed into every report.
struct RunInfo {
  std::string model;
  std::string scenario;
  std::string engine;
  Bounds bounds;
};

json bounds_json(const Bounds& b);
json domains_json(const Scenario& sc);
json stats_json(const Stats& s);
json verdict_json(const Verdict& v);
json trace_steps_json(const Trace& t);

/// Standalone counterexample document.
json trace_json(const RunInfo& run, const Verdict& v);
/// Reads back the steps of a trace document for replay.
Trace trace_from_json(const json& j);

json check_json(const RunInfo& run, const Scenario& sc, const std::vector<Verdict>& verdicts);
std::string check_text(const RunInfo& run, const std::vector<Verdict>& verdicts);

json analyze_json(const std::string& model, const Program& prog, const ControlReport& r);
std::string analyze_text(const std::string& model, const Program& prog, const ControlReport& r);

json vcs_json(const Program& prog, const std::string& predicate, const VcReport& r);
std::string vcs_text(const Program& prog, const std::string& predicate, const VcReport& r);

json lifting_json(const std::vector<LayerReport>& layers);
std::string lifting_text(const std::vector<LayerReport>& layers);

}  // namespace awn
