#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "noether/error.hpp"
#include "noether/job.hpp"

#ifdef NOETHER_HAVE_SUITE
#include "acceptance.hpp"
#endif

using noether::Json;

namespace {

struct Output {
  bool json = false;
  bool text = false;
  bool timings = false;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_source(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw noether::ParseError("cannot open '" + path + "'");
  return read_all(in);
}

Json parse_value(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    return Json(text);
  }
}

std::string to_pointer(const std::string& key) {
  if (!key.empty() && key.front() == '/') return key;
  std::string out = "/";
  for (char c : key) out += c == '.' ? '/' : c;
  return out;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int emit(const noether::Report& report, const Output& out) {
  Json j = report.to_json(out.timings);
  if (out.text)
    std::cout << noether::render_text(j);
  else
    std::cout << j.dump(2) << '\n';
  if (report.status == "error") std::cerr << "noether: " << report.error.value("message", "") << '\n';
  return static_cast<int>(report.exit_code);
}

int run_text(const std::string& command, const std::string& text, const Output& out) {
  noether::JobSpec job;
  try {
    job = noether::parse_job(text);
  } catch (const noether::Error& e) {
    return emit(noether::error_report(command, e), out);
  }
  return emit(noether::run_job(job), out);
}

/// Flags shared by every job subcommand; they are merged into one job object.
struct JobFlags {
  std::string payload_text;
  std::string payload_file;
  std::vector<std::string> sets;
  std::vector<std::string> budgets;
  Json flag_payload = Json::object();
};

void add_common(CLI::App* sub, JobFlags& f, Output& out) {
  sub->add_option("--payload", f.payload_text, "payload as a JSON object");
  sub->add_option("--payload-file", f.payload_file, "file holding the payload JSON ('-' for stdin)");
  sub->add_option("--set", f.sets, "payload field KEY=VALUE (dotted key, JSON or bare string value)");
  sub->add_option("--budget", f.budgets, "budget NAME=VALUE, e.g. max_pairs=1000");
  sub->add_flag("--json", out.json, "JSON report (default)");
  sub->add_flag("--text", out.text, "aligned text report");
  sub->add_flag("--timings", out.timings, "include wall-clock timings");
}

std::string assemble(const std::string& command, JobFlags& f) {
  Json payload = Json::object();
  if (!f.payload_text.empty() && !f.payload_file.empty())
    throw CLI::ValidationError("--payload and --payload-file are exclusive");
  if (!f.payload_text.empty()) payload = Json::parse(f.payload_text);
  if (!f.payload_file.empty()) payload = Json::parse(read_source(f.payload_file));
  if (!payload.is_object()) throw CLI::ValidationError("the payload must be a JSON object");
  for (auto it = f.flag_payload.begin(); it != f.flag_payload.end(); ++it) {
    if (it.key() == "ring" && payload.contains("ring") && payload["ring"].is_object() && it.value().is_object())
      payload["ring"].update(it.value());
    else
      payload[it.key()] = it.value();
  }
  for (const auto& s : f.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--set expects KEY=VALUE, got '" + s + "'");
    payload[Json::json_pointer(to_pointer(s.substr(0, eq)))] = parse_value(s.substr(eq + 1));
  }
  Json job{{"command", command}, {"payload", payload}};
  if (!f.budgets.empty()) {
    Json b = Json::object();
    for (const auto& s : f.budgets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--budget expects NAME=VALUE, got '" + s + "'");
      b[s.substr(0, eq)] = parse_value(s.substr(eq + 1));
    }
    job["budgets"] = b;
  }
  return job.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
#ifdef NOETHER_HAVE_SUITE
  noether::acceptance::register_suite_command();
#endif
  CLI::App app{"noether: sheaves of ideals, Cech cohomology, Baer and etale checks"};
  app.set_version_flag("--version", std::string(NOETHER_VERSION));
  app.require_subcommand(1);
  Output out;

  auto* run = app.add_subcommand("run", "run a full job JSON {command, payload, budgets}");
  std::string run_path = "-";
  run->add_option("file", run_path, "job file or '-' for stdin");
  run->add_flag("--json", out.json, "JSON report (default)");
  run->add_flag("--text", out.text, "aligned text report");
  run->add_flag("--timings", out.timings, "include wall-clock timings");

  auto* list = app.add_subcommand("list", "list commands and their example payloads");

  std::map<std::string, JobFlags> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& info : noether::command_table()) {
    auto* sub = app.add_subcommand(info.name, info.summary);
    add_common(sub, flags[info.name], out);
    subs[info.name] = sub;
  }

  // Ring descriptor shortcuts for the polynomial commands.
  struct RingFlags {
    std::string field, vars, order, inverted, quotient, ideal, other, poly, op, a, b;
  };
  std::map<std::string, RingFlags> ring_flags;
  for (const char* name : {"groebner", "ideal", "open", "cech-affine"}) {
    auto* sub = subs.at(name);
    auto& r = ring_flags[name];
    sub->add_option("--field", r.field, "q or fp:<p>");
    sub->add_option("--vars", r.vars, "comma-separated variables");
    sub->add_option("--order", r.order, "lex, deglex or degrevlex");
    sub->add_option("--inverted", r.inverted, "comma-separated inverted elements");
    sub->add_option("--quotient", r.quotient, "comma-separated quotient relations");
    if (std::string(name) != "open") sub->add_option("--ideal", r.ideal, "comma-separated generators");
  }
  subs.at("ideal")->add_option("--op", ring_flags["ideal"].op, "member, equal, contains, unit, radical-member, saturate, colon, sum, product, intersection");
  subs.at("ideal")->add_option("--poly", ring_flags["ideal"].poly, "polynomial operand");
  subs.at("ideal")->add_option("--other", ring_flags["ideal"].other, "comma-separated generators of the second ideal");
  subs.at("open")->add_option("--op", ring_flags["open"].op, "contains, equal, empty, intersect, cover, coordinate-ring, spec, finite-space");
  subs.at("open")->add_option("--a", ring_flags["open"].a, "first open D(f)");
  subs.at("open")->add_option("--b", ring_flags["open"].b, "second open D(g)");

  auto* cp = subs.at("cech-projective");
  int cp_n = 1, cp_d = 0, cp_window = -1;
  cp->add_option("--n", cp_n, "dimension of projective space");
  cp->add_option("--d", cp_d, "twist");
  cp->add_option("--window", cp_window, "Laurent truncation window");

  auto* et = subs.at("etale");
  std::string et_action;
  int et_depth = -1;
  std::string et_field, et_rule;
  et->add_option("action", et_action, "optional 'verify'")->check(CLI::IsMember({"verify"}));
  et->add_option("--depth", et_depth, "top level of the tower");
  et->add_option("--field", et_field, "q or fp:<p>");
  et->add_option("--exponent-rule", et_rule, "power or literal")->check(CLI::IsMember({"power", "literal"}));

  auto* ba = subs.at("baer");
  std::string ba_ring, ba_module, ba_op;
  int ba_length = -1, ba_bound = -1;
  ba->add_option("--ring", ba_ring, "finite ring, e.g. Z/4 or F2[x]/(x^2)");
  ba->add_option("--module", ba_module, "module: 0, R, R^k, R/(g) and sums");
  ba->add_option("--op", ba_op, "test, step, chain, envelope, resolution, ideals, homs");
  ba->add_option("--length", ba_length, "chain or resolution length");
  ba->add_option("--bound", ba_bound, "envelope size bound");

  auto* su = subs.at("suite");
  std::vector<int> su_only;
  su->add_option("--only", su_only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (out.json && out.text) {
    std::cerr << "noether: --json and --text are exclusive\n";
    return 2;
  }

  if (*list) {
    Json j = Json::array();
    for (const auto& info : noether::command_table())
      j.push_back(Json{{"name", info.name}, {"summary", info.summary}, {"operations", info.operations},
                       {"examples", info.examples}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (*run) {
    std::string text;
    try {
      text = read_source(run_path);
    } catch (const noether::Error& e) {
      return emit(noether::error_report("run", e), out);
    }
    return run_text("run", text, out);
  }

  for (auto& [name, sub] : subs) {
    if (!*sub) continue;
    JobFlags& f = flags[name];
    Json& p = f.flag_payload;
    if (auto it = ring_flags.find(name); it != ring_flags.end()) {
      const RingFlags& r = it->second;
      Json ring = Json::object();
      if (!r.field.empty()) ring["field"] = r.field;
      if (!r.vars.empty()) ring["vars"] = split_commas(r.vars);
      if (!r.order.empty()) ring["order"] = r.order;
      if (!r.inverted.empty()) ring["inverted"] = split_commas(r.inverted);
      if (!r.quotient.empty()) ring["quotient"] = split_commas(r.quotient);
      if (!ring.empty()) p["ring"] = ring;
      if (!r.ideal.empty()) p["ideal"] = split_commas(r.ideal);
      if (!r.other.empty()) p["other"] = split_commas(r.other);
      if (!r.poly.empty()) p["poly"] = r.poly;
      if (!r.op.empty()) p["op"] = r.op;
      if (!r.a.empty()) p["a"] = r.a;
      if (!r.b.empty()) p["b"] = r.b;
    }
    if (name == "cech-projective") {
      if (cp->count("--n")) p["n"] = cp_n;
      if (cp->count("--d")) p["d"] = cp_d;
      if (cp_window >= 0) p["window"] = cp_window;
    }
    if (name == "etale") {
      if (et_depth >= 0 || et->count("--depth")) p["depth"] = et_depth;
      if (!et_field.empty()) p["field"] = et_field;
      if (!et_rule.empty()) p["exponent_rule"] = et_rule;
    }
    if (name == "baer") {
      if (!ba_ring.empty()) p["ring"] = ba_ring;
      if (!ba_module.empty()) p["module"] = ba_module;
      if (!ba_op.empty()) p["op"] = ba_op;
      if (ba->count("--length")) p["length"] = ba_length;
      if (ba->count("--bound")) p["bound"] = ba_bound;
    }
    if (name == "suite" && !su_only.empty()) p["only"] = su_only;

    std::string text;
    try {
      text = assemble(name, f);
    } catch (const Json::parse_error& e) {
      std::cerr << "noether: invalid payload JSON: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "noether: " << e.what() << '\n';
      return 2;
    }
    return run_text(name, text, out);
  }
  return 2;
}
