#include "presets.hpp"
#include "report.hpp"

#include "dendra/error.hpp"
#include "dendra/ordering.hpp"
#include "dendra/realize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dendra::cli {

namespace {

constexpr std::size_t kListed = 20;

struct GroupSource {
  std::string preset;
  std::string gens_file;
  std::optional<std::size_t> radius;
};

// Generators file: a JSON array of matrices, or {"generators": [...], "names": [...]}.
OrderPreset load_group(const GroupSource& s, json& params) {
  OrderPreset group;
  if (!s.preset.empty()) {
    find_preset(s.preset, "order search");
    group = order_preset(s.preset);
    params["preset"] = s.preset;
  } else if (!s.gens_file.empty()) {
    json j = io::read_json_file(s.gens_file);
    const json& list = j.is_object() ? j.at("generators") : j;
    for (const auto& m : list) group.generators.push_back(io::matrix_from_json(m));
    if (j.is_object() && j.contains("names")) group.generator_names = j.at("names").get<std::vector<std::string>>();
    params["generators"] = s.gens_file;
  } else {
    throw CLI::RequiredError("--preset or --gens");
  }
  if (s.radius) group.radius = *s.radius;
  params["radius"] = group.radius;
  return group;
}

std::vector<GroupMatrix> with_inverses(const std::vector<GroupMatrix>& gens) {
  std::vector<GroupMatrix> f;
  for (const auto& g : gens) {
    f.push_back(g);
    f.push_back(g.inverse());
  }
  return f;
}

json axiom_json(const AxiomReport& r, const Ball& b) {
  json list = json::array();
  for (std::size_t k = 0; k < r.violations.size() && k < kListed; ++k) {
    const auto& v = r.violations[k];
    json labels = json::array();
    for (std::size_t i : v.elements) labels.push_back(b.label(i));
    list.push_back({{"axiom", v.kind == AxiomViolation::Kind::reflexivity ? "R" : "T"}, {"elements", labels}});
  }
  return {{"pass", r.pass}, {"violation_count", r.violations.size()}, {"violations", list}};
}

json invariance_json(const InvarianceReport& r, const Ball& b) {
  json list = json::array();
  for (std::size_t k = 0; k < r.violations.size() && k < kListed; ++k) {
    const auto& v = r.violations[k];
    list.push_back({{"f", v.f.to_string()}, {"g", b.label(v.g)}, {"h", b.label(v.h)}});
  }
  return {{"pass", r.pass}, {"checked", r.checked}, {"violation_count", r.violations.size()}, {"violations", list}};
}

// Elements x of b with s x in b for every s in F.
Ball inner_ball(const Ball& b, const std::vector<GroupMatrix>& f) {
  std::vector<GroupMatrix> inner;
  std::vector<std::vector<int>> words;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::all_of(f.begin(), f.end(), [&](const GroupMatrix& s) { return b.contains(s * b.element(i)); })) {
      inner.push_back(b.element(i));
      if (b.has_words()) words.push_back(b.word(i));
    }
  return Ball(std::move(inner), b.generators(), b.generator_names(), b.radius() > 0 ? b.radius() - 1 : 0,
              std::move(words));
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "discovery", "canonical", or a JSON file listing labels or ball indices.
std::vector<std::size_t> load_enumeration(const std::string& spec, const Ball& b) {
  std::vector<std::size_t> out;
  if (spec.empty() || spec == "discovery") return b.discovery_order();
  if (spec == "canonical") {
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(i);
    return out;
  }
  json j = io::read_json_file(spec);
  const json& list = j.is_object() ? j.at("enumeration") : j;
  for (const auto& item : list) {
    if (item.is_number_integer()) {
      out.push_back(item.get<std::size_t>());
      continue;
    }
    const auto label = item.get<std::string>();
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < b.size() && !found; ++i)
      if (b.label(i) == label) found = i;
    if (!found) throw Error("enumeration names an element outside the ball: " + label);
    out.push_back(*found);
  }
  return out;
}

std::vector<std::string> ascending_labels(const OrderAssignment& phi) {
  std::vector<std::string> out;
  for (std::size_t i : phi.sorted()) out.push_back(phi.domain().label(i));
  return out;
}

}  // namespace

void add_order_commands(CLI::App& app, Context& ctx) {
  auto* order = app.add_subcommand("order", "Orderings of finite balls");
  order->require_subcommand(1);

  {
    auto* cmd = order->add_subcommand("search", "Search an order on B' invariant under F on B");
    auto src = std::make_shared<GroupSource>();
    auto budget = std::make_shared<std::size_t>(1'000'000);
    auto seed = std::make_shared<std::optional<std::uint64_t>>();
    auto no_f = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    auto trace = std::make_shared<std::string>();
    auto* preset = cmd->add_option("--preset", src->preset, "Named instance (see `presets`)");
    cmd->add_option("--gens", src->gens_file, "JSON generators file")->check(CLI::ExistingFile)->excludes(preset);
    cmd->add_option("--radius", src->radius, "Radius of B; B' has radius one more");
    cmd->add_option("--budget", *budget, "Maximum number of decisions")->check(CLI::PositiveNumber);
    cmd->add_option("--shuffle-seed", *seed, "Permute the element order before searching");
    cmd->add_flag("--no-invariance", *no_f, "Use F = {} (any total order)");
    cmd->add_option("--out", *out, "Write the witness order JSON here when one exists");
    cmd->add_option("--trace", *trace, "Write the search trace JSON here");
    cmd->callback([&ctx, src, budget, seed, no_f, out, trace] {
      ctx.action = [&ctx, src, budget, seed, no_f, out, trace] {
        json params = json::object();
        auto group = load_group(*src, params);
        params["budget"] = *budget;
        if (*seed) params["shuffle_seed"] = **seed;
        params["invariance"] = !*no_f;
        Ball b = ball_generate(group.generators, group.radius, group.generator_names);
        auto b2 = std::make_shared<const Ball>(ball_generate(group.generators, group.radius + 1, group.generator_names));
        const auto f = *no_f ? std::vector<GroupMatrix>{} : with_inverses(group.generators);
        auto result = search_invariant(f, b, b2, {*budget, *seed});
        json report = make_report("order search", params);
        json res = io::to_json(result, *b2);
        res.erase("witness");
        res["ball_size"] = b.size();
        res["superset_size"] = b2->size();
        res["acting_set_size"] = f.size();
        report["result"] = std::move(res);
        if (!out->empty() && result.witness) io::write_text_file(*out, io::to_json(*result.witness).dump(1) + "\n");
        if (!trace->empty()) {
          json t = io::to_json(result, *b2);
          t.erase("witness");
          io::write_text_file(*trace, t.dump(2) + "\n");
        }
        const int code = result.outcome == SearchOutcome::sat     ? kPass
                         : result.outcome == SearchOutcome::unsat ? kFail
                                                                  : kInconclusive;
        report["status"] = to_string(result.outcome);
        return emit(ctx, std::move(report), code);
      };
    });
  }

  {
    auto* cmd = order->add_subcommand("check", "Check (R), (T) and optionally (L) for an order file");
    auto file = std::make_shared<std::string>();
    auto invariance = std::make_shared<bool>(false);
    cmd->add_option("--order", *file, "Order JSON")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--invariance", *invariance,
                  "Also check invariance under the generators and inverses on the inner ball");
    cmd->callback([&ctx, file, invariance] {
      ctx.action = [&ctx, file, invariance] {
        auto phi = io::order_from_json(io::read_json_file(*file));
        json params = {{"order", *file}, {"invariance", *invariance}};
        const Ball& b = phi.domain();
        auto axioms = check_axioms(phi, b);
        json result = {{"ball_size", b.size()}, {"axioms", axiom_json(axioms, b)}};
        bool pass = axioms.pass;
        if (*invariance) {
          const auto f = with_inverses(b.generators());
          Ball inner = inner_ball(b, f);
          auto inv = check_invariance(phi, f, inner, b);
          result["inner_ball_size"] = inner.size();
          result["invariance"] = invariance_json(inv, inner);
          pass = pass && inv.pass;
        }
        json report = make_report("order check", params);
        report["result"] = std::move(result);
        return emit(ctx, std::move(report), pass ? kPass : kFail);
      };
    });
  }

  {
    auto* cmd = order->add_subcommand("extract", "Stabilized restriction of a chain of orders");
    auto chain_files = std::make_shared<std::vector<std::string>>();
    auto radius = std::make_shared<std::size_t>(1);
    auto min_support = std::make_shared<std::size_t>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--chain", *chain_files, "Order JSON files, in chain order")->required()->check(CLI::ExistingFile);
    cmd->add_option("--target-radius", *radius, "Radius of the target ball over the chain generators");
    cmd->add_option("--min-support", *min_support, "Required number of agreeing chain members")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", *out, "Write the extracted order JSON here");
    cmd->callback([&ctx, chain_files, radius, min_support, out] {
      ctx.action = [&ctx, chain_files, radius, min_support, out] {
        std::vector<OrderAssignment> chain;
        for (const auto& f : *chain_files) chain.push_back(io::order_from_json(io::read_json_file(f)));
        const Ball& first = chain.front().domain();
        auto target = std::make_shared<const Ball>(ball_generate(first.generators(), *radius, first.generator_names()));
        auto extracted = compactness_extract(chain, target, *min_support);
        json params = {{"chain", *chain_files}, {"target_radius", *radius}, {"min_support", *min_support}};
        json report = make_report("order extract", params);
        report["result"] = {{"target_size", target->size()},
                            {"supporters", extracted.supporters},
                            {"ascending", ascending_labels(extracted.order)}};
        if (!out->empty()) io::write_text_file(*out, io::to_json(extracted.order).dump(1) + "\n");
        return emit(ctx, std::move(report), kPass);
      };
    });
  }

  {
    auto* cmd = order->add_subcommand("from-action", "Order a ball by first disagreeing probe");
    auto action_file = std::make_shared<std::string>();
    auto z = std::make_shared<std::string>();
    auto probes = std::make_shared<std::string>();
    auto radius = std::make_shared<std::size_t>(1);
    auto order_file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto* act_opt = cmd->add_option("--action", *action_file, "Tree action JSON with generator matrices")
                        ->check(CLI::ExistingFile);
    cmd->add_option("--z", *z, "Fixed leaf of the tree action");
    cmd->add_option("--probes", *probes,
                    "Comma-separated probes: vertex ids (tree action) or rationals (realized arc)");
    cmd->add_option("--radius", *radius, "Ball radius for the tree action");
    cmd->add_option("--order", *order_file, "Realize this order on an arc and read it back")
        ->check(CLI::ExistingFile)
        ->excludes(act_opt);
    cmd->add_option("--out", *out, "Write the constructed order JSON here");
    cmd->callback([&ctx, action_file, z, probes, radius, order_file, out] {
      ctx.action = [&ctx, action_file, z, probes, radius, order_file, out] {
        json params = json::object();
        json result;
        std::optional<OrderAssignment> built;
        int code = kPass;
        if (!action_file->empty()) {
          auto act = io::action_from_json(io::read_json_file(*action_file));
          if (act.generator_matrices.empty()) throw Error("the action file must give generator matrices");
          if (z->empty()) throw CLI::RequiredError("--z");
          auto b = std::make_shared<const Ball>(ball_generate(act.generator_matrices, *radius, act.generator_names));
          const auto probe_ids = split_list(*probes);
          params = {{"action", *action_file}, {"z", *z}, {"probes", probe_ids}, {"radius", *radius}};
          built = order_from_action(act, *z, probe_ids, b);
          result["mode"] = "tree";
        } else if (!order_file->empty()) {
          auto input = io::order_from_json(io::read_json_file(*order_file));
          const Ball& b = input.domain();
          auto rm = realize(b.discovery_order(), input);
          auto arc = realized_arc_action(rm, b);
          std::vector<Rational> probe_points = parse_rationals(*probes);
          if (probe_points.empty()) {
            for (const auto& t : rm.t)
              if (t >= 0) probe_points.push_back(t);
            std::sort(probe_points.begin(), probe_points.end());
          }
          std::vector<std::string> shown;
          for (const auto& q : probe_points) shown.push_back(to_fraction_string(q));
          params = {{"order", *order_file}, {"probes", shown}, {"enumeration", "discovery"}};
          built = order_from_action(arc, probe_points, input.domain_ptr());
          const bool same = *built == input;
          result["mode"] = "arc";
          result["reproduces_input"] = same;
          code = same ? kPass : kFail;
        } else {
          throw CLI::RequiredError("--action or --order");
        }
        result["ball_size"] = built->size();
        result["ascending"] = ascending_labels(*built);
        if (!out->empty()) io::write_text_file(*out, io::to_json(*built).dump(1) + "\n");
        json report = make_report("order from-action", params);
        report["result"] = std::move(result);
        return emit(ctx, std::move(report), code);
      };
    });
  }

  {
    auto* cmd = order->add_subcommand("ll", "Bounded test of g << h for piecewise-linear maps");
    cmd->set_help_flag("--help", "Print this help message and exit");
    auto g_file = std::make_shared<std::string>();
    auto h_file = std::make_shared<std::string>();
    auto probes = std::make_shared<std::string>("0");
    auto cap = std::make_shared<std::size_t>(3);
    cmd->add_option("--g", *g_file, "Breakpoint CSV of g")->required()->check(CLI::ExistingFile);
    cmd->add_option("--h", *h_file, "Breakpoint CSV of h")->required()->check(CLI::ExistingFile);
    cmd->add_option("--probes", *probes, "Comma-separated rational probes");
    cmd->add_option("--power-cap", *cap, "Largest |k| tested")->check(CLI::PositiveNumber);
    cmd->callback([&ctx, g_file, h_file, probes, cap] {
      ctx.action = [&ctx, g_file, h_file, probes, cap] {
        auto g = pl_from_csv(read_text(*g_file));
        auto h = pl_from_csv(read_text(*h_file));
        QuasiOrderSample sample{parse_rationals(*probes)};
        if (sample.probes.empty()) throw Error("at least one probe required");
        auto r = ll_test(sample, g, h, *cap);
        json params = {{"g", *g_file}, {"h", *h_file}, {"probes", split_list(*probes)}, {"power_cap", *cap}};
        json result = {{"verdict", to_string(r.verdict)}, {"approximation", "powers |k| <= power_cap only"}};
        auto opt = [](const std::optional<long>& v) { return v ? json(*v) : json(nullptr); };
        result["k0"] = opt(r.k0);
        result["first_k_above_h"] = opt(r.refutes_up);
        result["first_k_above_h_inverse"] = opt(r.refutes_down);
        result["surviving"] = r.surviving ? json(*r.surviving > 0 ? "g^k <= h" : "g^k <= h^-1") : json(nullptr);
        json report = make_report("order ll", params);
        report["result"] = std::move(result);
        const int code = r.verdict == LLVerdict::holds_up_to_k ? kPass
                         : r.verdict == LLVerdict::fails       ? kFail
                                                               : kInconclusive;
        report["status"] = to_string(r.verdict);
        return emit(ctx, std::move(report), code);
      };
    });
  }
}

void add_realize_command(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("realize", "Dynamical realization of an ordered ball");
  auto order_file = std::make_shared<std::string>();
  auto enum_spec = std::make_shared<std::string>("discovery");
  auto out_dir = std::make_shared<std::string>();
  auto svg = std::make_shared<bool>(false);
  cmd->add_option("--order", *order_file, "Order JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--enum", *enum_spec,
                  "Enumeration: \"discovery\", \"canonical\" or a JSON list of labels or indices");
  cmd->add_option("--out", *out_dir, "Directory for realization.csv and maps/")->required();
  cmd->add_flag("--svg", *svg, "Also plot each map");
  cmd->callback([&ctx, order_file, enum_spec, out_dir, svg] {
    ctx.action = [&ctx, order_file, enum_spec, out_dir, svg] {
      namespace fs = std::filesystem;
      auto phi = io::order_from_json(io::read_json_file(*order_file));
      const Ball& b = phi.domain();
      auto enumeration = load_enumeration(*enum_spec, b);
      auto rm = realize(enumeration, phi);
      auto arc = realized_arc_action(rm, b);
      auto verification = verify_realization(rm, arc.maps, b);
      auto freeness = almost_free_report(arc.maps);

      fs::create_directories(fs::path(*out_dir) / "maps");
      io::write_text_file((fs::path(*out_dir) / "realization.csv").string(), to_csv(rm));
      json t_values = json::array();
      bool dyadic = true;
      for (std::size_t k = 0; k < rm.t.size(); ++k) {
        t_values.push_back({{"word", rm.labels[k]}, {"t", to_fraction_string(rm.t[k])}});
        dyadic = dyadic && has_dyadic_denominator(rm.t[k]);
      }
      json maps = json::array();
      for (const auto& m : arc.maps) {
        const std::size_t index = b.index(m.element);
        const std::string stem = "map-" + std::to_string(index);
        io::write_text_file((fs::path(*out_dir) / "maps" / (stem + ".csv")).string(), to_csv(m.map));
        if (*svg) io::write_text_file((fs::path(*out_dir) / "maps" / (stem + ".svg")).string(), to_svg(m.map, m.label));
        maps.push_back({{"word", m.label}, {"file", "maps/" + stem + ".csv"}, {"breakpoints", m.map.breakpoints().size()}});
      }
      json witnesses = json::array();
      for (const auto& w : freeness.witnesses)
        witnesses.push_back({{"word", w.label}, {"lo", to_fraction_string(w.lo)}, {"hi", to_fraction_string(w.hi)}});
      json params = {{"order", *order_file}, {"enumeration", *enum_spec}, {"out", *out_dir}, {"svg", *svg}};
      json report = make_report("realize", params);
      report["result"] = {
          {"t", t_values},
          {"dyadic_denominators", dyadic},
          {"maps", maps},
          {"verification",
           {{"pass", verification.pass}, {"checked", verification.checked}, {"violations", verification.violations}}},
          {"almost_free", {{"verdict", freeness.almost_free}, {"witnesses", witnesses}}}};
      const bool pass = verification.pass && freeness.almost_free;
      return emit(ctx, std::move(report), pass ? kPass : kFail);
    };
  });
}

}  // namespace dendra::cli
