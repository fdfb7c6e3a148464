#pragma once

#include <string>

#include "json.hpp"

#include "dobinski/boxdim.hpp"
#include "dobinski/interval.hpp"
#include "dobinski/series.hpp"
#include "dobinski/setspec.hpp"
#include "dobinski/willow.hpp"

namespace dobinski {

using Json = nlohmann::ordered_json;

// Interval families serialize centers as exact dyadics and radii as exact
// log2 exponents when pure powers, rationals or bracket endpoints otherwise.
Json family_json(const IntervalFamily& f);
Json quasi_json(const QuasiAudit& a);
std::string quasi_csv(const QuasiAudit& a);
Json series_json(const SeriesReport& r);
std::string series_csv(const SeriesReport& r);
Json fit_json(const FitResult& r);
Json schedule_json(const WillowSchedule& s);
Json constraint_json(const ConstraintReport& r);
Json audit_json(const AuditResult& r);
Json eq9_json(const Eq9Report& r);

std::string rational_str(const Rational& q);

// Envelope every CLI result rides in: schema id, echoed command + config.
Json envelope(const std::string& command, const Json& config, const Json& results);

}  // namespace dobinski
