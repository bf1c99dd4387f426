#include "report.hpp"

#include "dendra/error.hpp"

#include <ostream>
#include <sstream>

namespace dendra::cli {

json make_report(const std::string& command, json parameters) {
  json report;
  report["tool"] = "dendra";
  report["version"] = DENDRA_VERSION;
  report["command"] = command;
  report["parameters"] = std::move(parameters);
  return report;
}

std::string status_name(int exit_code) {
  switch (exit_code) {
    case kPass: return "pass";
    case kFail: return "fail";
    case kInconclusive: return "inconclusive";
    default: return "error";
  }
}

int emit(Context& ctx, json report, int exit_code) {
  if (!report.contains("status")) report["status"] = status_name(exit_code);
  const std::string text = report.dump(2) + "\n";
  if (ctx.report_path.empty())
    *ctx.out << text;
  else
    io::write_text_file(ctx.report_path, text);
  return exit_code;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  json config;
  try {
    config = io::read_json_file(path);
  } catch (const Error& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!config.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    const std::string flag = (key.size() == 1 ? "-" : "--") + key;
    auto scalar = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number() || v.is_boolean()) return v.dump();
      throw CLI::ValidationError("--config", "unsupported value for key " + key);
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        out.push_back(flag);
        out.push_back(scalar(v));
      }
    } else {
      out.push_back(flag);
      out.push_back(scalar(value));
    }
  }
  return out;
}

}  // namespace dendra::cli
