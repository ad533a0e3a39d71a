#pragma once

// JSON reports (schema 1) and file output.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "ghzst/npa_curve.hpp"
#include "ghzst/robustness.hpp"
#include "ghzst/swapiso.hpp"

namespace ghzst {

using Json = nlohmann::ordered_json;

/// {"schema": 1, "kind": kind}
Json make_report(const std::string& kind);

Json to_json(const CorrelationReport& rep);
Json to_json(const Theorem1Report& rep);
Json to_json(const npa::GCurve& curve);
Json to_json(const QualityCurve& curve);

/// Basis words, moment words and constraint coefficient lists for external cross-checks.
Json problem_json(const npa::SdpProblem& problem);

/// Writes `content`, creating parent directories. Throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ghzst
