#pragma once

#include <string>
#include <vector>

namespace dendra::cli {

struct Preset {
  std::string name;
  std::string command;  // subcommand that accepts it via --preset
  std::string description;
  std::vector<std::pair<std::string, std::string>> parameters;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name, const std::string& command);

}  // namespace dendra::cli
