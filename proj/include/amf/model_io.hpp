#pragma once

#include "amf/coset_model.hpp"
#include "amf/raising.hpp"

#include <json.hpp>

#include <string>

namespace amf {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts a JSON number or a decimal string (large integers travel as
// strings).
Int parse_big(const nlohmann::json& j, const std::string& where);

DoubleCosetModel model_from_json(const nlohmann::json& j);
DoubleCosetModel model_from_file(const std::string& path);
nlohmann::json model_to_json(const DoubleCosetModel& model);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string model_hash(const DoubleCosetModel& model);

nlohmann::json certificate_to_json(const CongruenceCertificate& cert);
CongruenceCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json validation_report_json(const DoubleCosetModel& model,
                                      const ValidationReport& report);

}  // namespace amf
