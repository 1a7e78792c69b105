#pragma once

#include <string>

#include <json.hpp>

#include "reskit/events.hpp"
#include "reskit/fitting.hpp"
#include "reskit/ingest.hpp"
#include "reskit/metrics.hpp"
#include "reskit/simulation.hpp"

namespace reskit {

// nlohmann::json adapters, found by ADL.
void to_json(nlohmann::json& j, const Rejection& r);
void to_json(nlohmann::json& j, const CleaningReport& r);
void to_json(nlohmann::json& j, const ExpFitModel& m);
void from_json(const nlohmann::json& j, ExpFitModel& m);
void to_json(nlohmann::json& j, const MomentStats& m);
void from_json(const nlohmann::json& j, MomentStats& m);
void to_json(nlohmann::json& j, const StatsBundle& b);
void from_json(const nlohmann::json& j, StatsBundle& b);
void to_json(nlohmann::json& j, const MetricsPrediction& p);
void to_json(nlohmann::json& j, const EmpiricalMoment& m);

/// {id, n, o, r, c_out, c_res, duration_min, overlap_fraction}; the overlap is
/// null where it is undefined (n < 2 or zero duration).
nlohmann::json event_json(const Event& e);

/// FNV-1a 64 of the bundle's compact JSON dump, as 16 hex digits.
std::string bundle_hash(const StatsBundle& bundle);

} // namespace reskit
