#include "cli.hpp"

#include "presets.hpp"
#include "report.hpp"

#include "dendra/error.hpp"

#include <ostream>

namespace dendra::cli {

namespace {

void add_presets_command(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("presets", "List named instances");
  cmd->callback([&ctx] {
    ctx.action = [&ctx] {
      json list = json::array();
      for (const auto& p : presets()) {
        json entry;
        entry["name"] = p.name;
        entry["command"] = p.command;
        entry["description"] = p.description;
        json params = json::object();
        for (const auto& [k, v] : p.parameters) params[k] = v;
        entry["parameters"] = std::move(params);
        list.push_back(std::move(entry));
      }
      json report = make_report("presets", json::object());
      report["result"] = {{"presets", std::move(list)}};
      return emit(ctx, std::move(report), kPass);
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  CLI::App app{"Group actions on finite trees and finite-ball left orderings", "dendra"};
  app.set_version_flag("--version", std::string(DENDRA_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--report", ctx.report_path, "Write the JSON report here instead of stdout");
  app.add_option("--workers", ctx.workers, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", "JSON object of option values for the subcommand (handled before parsing)");

  add_tower_commands(app, ctx);
  add_order_commands(app, ctx);
  add_realize_command(app, ctx);
  add_identity_commands(app, ctx);
  add_tree_commands(app, ctx);
  add_presets_command(app, ctx);

  try {
    auto expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << DENDRA_VERSION << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!ctx.action) {
    err << "usage error: missing subcommand\n";
    return kUsage;
  }
  try {
    return ctx.action();
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace dendra::cli
