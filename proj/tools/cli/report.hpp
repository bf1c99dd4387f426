#pragma once

#include "cli.hpp"
#include "dendra/io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace dendra::cli {

using json = io::json;

struct Context {
  std::string report_path;
  std::size_t workers = 1;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::function<int()> action;
};

/// Report skeleton: tool, version, command and parameters.
json make_report(const std::string& command, json parameters);

/// Writes the report with its status and returns the exit code.
int emit(Context& ctx, json report, int exit_code);

std::string status_name(int exit_code);
std::vector<std::string> split_list(const std::string& text);

/// Converts the --config JSON object into flags appended to args.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

void add_tower_commands(CLI::App& app, Context& ctx);
void add_order_commands(CLI::App& app, Context& ctx);
void add_realize_command(CLI::App& app, Context& ctx);
void add_identity_commands(CLI::App& app, Context& ctx);
void add_tree_commands(CLI::App& app, Context& ctx);

}  // namespace dendra::cli
