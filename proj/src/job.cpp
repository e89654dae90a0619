#include "noether/job.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "noether/error.hpp"

#ifndef NOETHER_VERSION
#define NOETHER_VERSION "0.0.0"
#endif

namespace noether {

// ------------------------------------------------------------ locations

namespace {

std::string escape_pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

LocationMap index_json_locations(std::string_view text) {
  struct Frame {
    bool object;
    std::string path;
    std::string key;
    std::size_t index = 0;
    bool expect_key = false;
  };
  LocationMap out;
  std::vector<Frame> stack;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&]() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto value_path = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& f = stack.back();
    return f.path + "/" + (f.object ? escape_pointer_token(f.key) : std::to_string(f.index));
  };
  auto read_string = [&]() {
    std::string s;
    advance();  // opening quote
    while (i < text.size() && text[i] != '"') {
      if (text[i] == '\\') {
        advance();
        if (i < text.size()) s += text[i];
      } else {
        s += text[i];
      }
      advance();
    }
    if (i < text.size()) advance();
    return s;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':') {
      advance();
      continue;
    }
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) stack.back().expect_key = true;
        else ++stack.back().index;
      }
      advance();
      continue;
    }
    if (c == '}' || c == ']') {
      stack.pop_back();
      advance();
      continue;
    }
    if (c == '"' && !stack.empty() && stack.back().object && stack.back().expect_key) {
      stack.back().key = read_string();
      stack.back().expect_key = false;
      continue;
    }
    std::string path = value_path();
    out[path] = SourceLocation{line, col};
    if (c == '{' || c == '[') {
      stack.push_back(Frame{c == '{', path, {}, 0, c == '{'});
      advance();
    } else if (c == '"') {
      read_string();
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != ',' && text[i] != '}' && text[i] != ']')
        advance();
    }
  }
  return out;
}

// --------------------------------------------------------- PayloadContext

bool PayloadContext::has(const std::string& ptr) const {
  return payload_.contains(Json::json_pointer(ptr));
}

const Json& PayloadContext::at(const std::string& ptr) const {
  if (!has(ptr)) fail(ptr, "missing required field");
  return payload_.at(Json::json_pointer(ptr));
}

std::string PayloadContext::where(const std::string& ptr) const {
  std::string shown = "payload" + ptr;
  if (!locations_) return shown;
  std::string probe = "/payload" + ptr;
  while (true) {
    auto it = locations_->find(probe);
    if (it != locations_->end())
      return shown + " (line " + std::to_string(it->second.line) + ", column " +
             std::to_string(it->second.column) + ")";
    auto slash = probe.rfind('/');
    if (slash == std::string::npos) return shown;
    probe.resize(slash);
  }
}

void PayloadContext::fail(const std::string& ptr, const std::string& message) const {
  throw ParseError(where(ptr) + ": " + message);
}

std::string PayloadContext::string(const std::string& ptr, const std::string& fallback) const {
  return has(ptr) ? string(ptr) : fallback;
}

std::string PayloadContext::string(const std::string& ptr) const {
  const Json& v = at(ptr);
  if (!v.is_string()) fail(ptr, "expected a string");
  return v.get<std::string>();
}

long PayloadContext::integer(const std::string& ptr, long fallback) const {
  return has(ptr) ? integer(ptr) : fallback;
}

long PayloadContext::integer(const std::string& ptr) const {
  const Json& v = at(ptr);
  if (!v.is_number_integer()) fail(ptr, "expected an integer");
  return v.get<long>();
}

bool PayloadContext::boolean(const std::string& ptr, bool fallback) const {
  if (!has(ptr)) return fallback;
  const Json& v = at(ptr);
  if (!v.is_boolean()) fail(ptr, "expected true or false");
  return v.get<bool>();
}

std::vector<std::string> PayloadContext::strings(const std::string& ptr) const {
  if (!has(ptr)) return {};
  const Json& v = at(ptr);
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) fail(ptr, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_string()) fail(ptr + "/" + std::to_string(k), "expected a string");
    out.push_back(v[k].get<std::string>());
  }
  return out;
}

std::size_t PayloadContext::array_size(const std::string& ptr) const {
  if (!has(ptr)) return 0;
  const Json& v = at(ptr);
  if (!v.is_array()) fail(ptr, "expected an array");
  return v.size();
}

// ------------------------------------------------------------- commands

namespace detail {
std::vector<CommandInfo> builtin_commands();
}

namespace {

std::vector<CommandInfo>& table() {
  static std::vector<CommandInfo> commands = detail::builtin_commands();
  return commands;
}

void apply_budgets(const Json& budgets, Budget& b, const LocationMap& locations) {
  auto located = [&](const std::string& key) {
    auto it = locations.find("/budgets/" + escape_pointer_token(key));
    if (it == locations.end()) return "budgets/" + key;
    return "budgets/" + key + " (line " + std::to_string(it->second.line) + ", column " +
           std::to_string(it->second.column) + ")";
  };
  if (!budgets.is_object()) throw ParseError("budgets: expected an object");
  auto set = [&](const char* key, auto& field) {
    if (!budgets.contains(key)) return;
    const Json& v = budgets[key];
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError(located(key) + ": expected a non-negative integer");
    field = static_cast<std::remove_reference_t<decltype(field)>>(v.get<long long>());
  };
  static const std::vector<std::string> known{"max_pairs",          "max_degree",
                                              "max_ring_size",      "max_module_size",
                                              "max_digraph_nodes",  "max_extraction_depth",
                                              "max_tower_depth"};
  for (auto it = budgets.begin(); it != budgets.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ParseError(located(it.key()) + ": unknown budget");
  set("max_pairs", b.max_pairs);
  set("max_degree", b.max_degree);
  set("max_ring_size", b.max_ring_size);
  set("max_module_size", b.max_module_size);
  set("max_digraph_nodes", b.max_digraph_nodes);
  set("max_extraction_depth", b.max_extraction_depth);
  set("max_tower_depth", b.max_tower_depth);
}

Json budget_json(const Budget& b) {
  return Json{{"max_pairs", b.max_pairs},
              {"max_degree", b.max_degree},
              {"max_ring_size", b.max_ring_size},
              {"max_module_size", b.max_module_size},
              {"max_digraph_nodes", b.max_digraph_nodes},
              {"max_extraction_depth", b.max_extraction_depth},
              {"max_tower_depth", b.max_tower_depth}};
}

void validate_job(const JobSpec& job) {
  const CommandInfo* cmd = find_command(job.command);
  if (!cmd) {
    std::string names;
    for (const auto& c : command_table()) names += (names.empty() ? "" : ", ") + c.name;
    throw ParseError("unknown command '" + job.command + "' (expected one of " + names + ")");
  }
  if (!job.payload.is_object()) throw ParseError("payload: expected an object");
  PayloadContext ctx(job.payload, job.locations.empty() ? nullptr : &job.locations, job.budget);
  cmd->handler(ctx, false);
}

}  // namespace

const std::vector<CommandInfo>& command_table() { return table(); }

void register_command(CommandInfo info) {
  auto& t = table();
  for (auto& c : t)
    if (c.name == info.name) {
      c = std::move(info);
      return;
    }
  t.push_back(std::move(info));
}

const CommandInfo* find_command(const std::string& name) {
  for (const auto& c : command_table())
    if (c.name == name) return &c;
  return nullptr;
}

// ------------------------------------------------------------- parse_job

JobSpec parse_job(std::string_view text, const Budget& base) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError("empty job input");
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Byte offset -> line/column.
    std::size_t line = 1, col = 1;
    std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < limit; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto colon = what.find("syntax error");
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     (colon == std::string::npos ? what : what.substr(colon)));
  }
  if (!root.is_object()) throw ParseError("line 1, column 1: a job must be a JSON object");
  JobSpec job;
  job.locations = index_json_locations(text);
  for (auto it = root.begin(); it != root.end(); ++it)
    if (it.key() != "command" && it.key() != "payload" && it.key() != "budgets") {
      auto loc = job.locations["/" + escape_pointer_token(it.key())];
      throw ParseError("line " + std::to_string(loc.line) + ", column " +
                       std::to_string(loc.column) + ": unknown top-level field '" + it.key() +
                       "'");
    }
  if (!root.contains("command") || !root["command"].is_string())
    throw ParseError("a job needs a string field \"command\"");
  job.command = root["command"].get<std::string>();
  job.payload = root.value("payload", Json::object());
  job.budget = base;
  if (root.contains("budgets")) apply_budgets(root["budgets"], job.budget, job.locations);
  validate_job(job);
  return job;
}

JobSpec make_job(const std::string& command, Json payload, const Budget& base) {
  JobSpec job;
  job.command = command;
  job.payload = std::move(payload);
  job.budget = base;
  validate_job(job);
  return job;
}

// -------------------------------------------------------------- reports

ExitCode exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::parse:
    case Error::Kind::validation:
    case Error::Kind::domain: return ExitCode::parse;
    case Error::Kind::capability:
    case Error::Kind::resource: return ExitCode::resource;
    case Error::Kind::oracle: return ExitCode::fail;
  }
  return ExitCode::fail;
}

Json Report::to_json(bool with_timings) const {
  Json j{{"command", command},
         {"status", status},
         {"exit_code", static_cast<int>(exit_code)},
         {"version", NOETHER_VERSION},
         {"config", config},
         {"result", result},
         {"witnesses", witnesses}};
  if (!error.is_null()) j["error"] = error;
  if (with_timings) j["timings"] = timings;
  return j;
}

Report error_report(const std::string& command, const Error& e) {
  Report report;
  report.command = command;
  report.status = "error";
  report.exit_code = exit_code_for(e);
  report.error = Json{{"kind", e.kind_name()}, {"message", e.what()}};
  if (auto* r = dynamic_cast<const ResourceError*>(&e)) report.error["budget"] = r->budget();
  return report;
}

Report run_job(const JobSpec& job) {
  Report report;
  report.command = job.command;
  report.config = Json{{"budgets", budget_json(job.budget)}};
  auto start = std::chrono::steady_clock::now();
  try {
    const CommandInfo* cmd = find_command(job.command);
    if (!cmd) throw ParseError("unknown command '" + job.command + "'");
    PayloadContext ctx(job.payload, job.locations.empty() ? nullptr : &job.locations, job.budget);
    CommandOutcome out = cmd->handler(ctx, true);
    for (auto it = out.config.begin(); it != out.config.end(); ++it) report.config[it.key()] = it.value();
    report.result = std::move(out.result);
    report.witnesses = std::move(out.witnesses);
    report.status = out.pass ? "pass" : "fail";
    report.exit_code = out.pass ? ExitCode::pass : ExitCode::fail;
  } catch (const Error& e) {
    Report failed = error_report(job.command, e);
    report.status = failed.status;
    report.exit_code = failed.exit_code;
    report.error = failed.error;
  }
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  report.timings = Json{{"wall_ms", elapsed.count()}};
  return report;
}

// ---------------------------------------------------------------- text

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool all_scalars(const Json& v) {
  return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
}

void flatten(const Json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    if (v.empty()) rows.emplace_back(path, "{}");
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
  } else if (v.is_array()) {
    if (all_scalars(v)) {
      std::string s = "[";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar_text(v[k]);
      rows.emplace_back(path, s + "]");
    } else {
      for (std::size_t k = 0; k < v.size(); ++k) flatten(v[k], path + "[" + std::to_string(k) + "]", rows);
    }
  } else {
    rows.emplace_back(path, scalar_text(v));
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return out.str();
}

}  // namespace noether
