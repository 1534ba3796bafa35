#pragma once

// Command implementations shared by the CLI and the acceptance suite. Every
// command returns a machine-readable tree with a top-level "ok" flag; the
// caller wraps it with session metadata.

#include <json.hpp>

#include "ntors/session.hpp"

namespace ntors {

using Json = nlohmann::ordered_json;

Json cmd_analyze(Session& S);
Json cmd_torsion_enumerate(Session& S);
Json cmd_torsion_check(Session& S, const Subcat& U);
Json cmd_aisles_enumerate(Session& S);
Json cmd_check_theorem_a(Session& S);
Json cmd_check_theorem_b(Session& S);
Json cmd_check_theorem_c(Session& S);
Json cmd_check_wakamatsu(Session& S);
Json cmd_check_apr(Session& S, int vertex_1based);
// delta spec: "<label>@<shift>[+...]-><label>@<shift>[+...][:c1,c2,...]";
// the right-hand side is Sigma^n x', written with its own shifts.
Json cmd_angle_complete(Session& S, const std::string& delta_spec);

std::string angle_text(const Session& S, const NAngle& angle);

} // namespace ntors
