#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qkdpp/optimizer/curves.hpp"
#include "qkdpp/optimizer/optimizer.hpp"
#include "qkdpp/protocol/session.hpp"

namespace qkdpp::cli {

/// Probabilities appear twice: `x` (linear) and `x_log2`.
nlohmann::json plan_to_json(const OptimizedPlan& p);
/// Inverse of plan_to_json for the fields a session needs. Throws ConfigError.
OptimizedPlan plan_from_json(const nlohmann::json& j);

nlohmann::json party_to_json(const PartyOutcome& o);
nlohmann::json session_to_json(const SessionResult& r, const OptimizedPlan& plan);
nlohmann::json curve_to_json(const CurveTable& t);

/// One line per frame: direction, type, payload and tag bit lengths, hex bytes.
std::string transcript_dump(const std::vector<TranscriptEntry>& t);

std::string to_hex(const BitString& bits);

}  // namespace qkdpp::cli
