#pragma once

#include <string>

#include <json.hpp>

#include "polarshape/code.hpp"
#include "polarshape/sim.hpp"

namespace polarshape {

nlohmann::json channel_to_json(const Dmc& channel);
Dmc channel_from_json(const nlohmann::json& j);

nlohmann::json code_spec_to_json(const CodeSpec& spec);
CodeSpec code_spec_from_json(const nlohmann::json& j);

SimConfig sim_config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SimReport& report);

std::string report_csv_header();
std::string report_csv_row(const std::string& label, const SimReport& report);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace polarshape
