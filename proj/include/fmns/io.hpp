#pragma once

// Serialization: long-format CSV for trajectories and Euler frames, JSON with
// stable key order for audit and study reports. Output is byte-deterministic.

#include <string>
#include <vector>

#include "json.hpp"

#include "fmns/audit.hpp"
#include "fmns/euler_map.hpp"
#include "fmns/studies.hpp"
#include "fmns/timestepper.hpp"

namespace fmns {

/// 17 significant digits, enough to round-trip a double.
std::string format_number(double x);

/// Header "t,cell,y,J,v,theta,G,eta"; one row per cell per snapshot. v and eta
/// are averaged from the two bounding nodes to the cell center.
std::string timeseries_csv(const Trajectory& traj, const Problem& problem);
/// Header "t,x,rho,u,theta".
std::string euler_csv(const std::vector<EulerFrame>& frames);

nlohmann::ordered_json constants_json(const AprioriConstants& c);
nlohmann::ordered_json audit_json(const AuditReport& report);
nlohmann::ordered_json order_json(const OrderReport& report);
nlohmann::ordered_json continuation_json(const ContinuationReport& report);

/// Throws StructuralError naming the path on failure.
void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::ordered_json& doc);

}  // namespace fmns
