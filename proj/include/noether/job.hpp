#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "noether/budget.hpp"

namespace noether {

using Json = nlohmann::ordered_json;

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// JSON pointer -> position of the value in the job text.
using LocationMap = std::map<std::string, SourceLocation>;

/// Positions of every value in a syntactically valid JSON text.
LocationMap index_json_locations(std::string_view text);

/// A schema-checked job: {"command": ..., "payload": {...}, "budgets": {...}}.
struct JobSpec {
  std::string command;
  Json payload = Json::object();
  Budget budget;
  LocationMap locations;
};

/// Parses and validates a job. Every polynomial, ring and module in the
/// payload is parsed here; failures are ParseError messages carrying the
/// JSON pointer and line/column. Budgets start from `base` and are then
/// overridden by the job's "budgets" object.
JobSpec parse_job(std::string_view text, const Budget& base = Budget::from_environment());
/// The same validation for a payload built in memory.
JobSpec make_job(const std::string& command, Json payload,
                 const Budget& base = Budget::from_environment());

enum class ExitCode { pass = 0, fail = 1, parse = 2, resource = 3 };

struct Report {
  std::string command;
  /// "pass", "fail" or "error".
  std::string status;
  ExitCode exit_code = ExitCode::pass;
  Json config = Json::object();
  Json result = Json::object();
  Json witnesses = Json::array();
  Json error;
  /// Wall-clock data; never part of `to_json(false)`.
  Json timings = Json::object();

  Json to_json(bool with_timings = false) const;
};

/// Never throws for library errors: they become status "error" with the
/// matching exit code.
Report run_job(const JobSpec& job);

/// Report with status "error" for an input or budget failure.
Report error_report(const std::string& command, const class Error& e);

/// Aligned "path  value" lines derived from the JSON report.
std::string render_text(const Json& report);

/// Exit code for an error of the given kind: parse/validation/domain -> 2,
/// capability/resource -> 3, oracle -> 1.
ExitCode exit_code_for(const class Error& e);

struct CommandOutcome {
  bool pass = true;
  Json config = Json::object();
  Json result = Json::object();
  Json witnesses = Json::array();
};

/// Payload access with located diagnostics.
class PayloadContext {
public:
  PayloadContext(const Json& payload, const LocationMap* locations, const Budget& budget)
      : payload_(payload), locations_(locations), budget_(budget) {}

  const Json& payload() const noexcept { return payload_; }
  const Budget& budget() const noexcept { return budget_; }
  bool has(const std::string& ptr) const;
  const Json& at(const std::string& ptr) const;
  std::string where(const std::string& ptr) const;
  [[noreturn]] void fail(const std::string& ptr, const std::string& message) const;

  std::string string(const std::string& ptr, const std::string& fallback) const;
  std::string string(const std::string& ptr) const;
  long integer(const std::string& ptr, long fallback) const;
  long integer(const std::string& ptr) const;
  bool boolean(const std::string& ptr, bool fallback) const;
  std::vector<std::string> strings(const std::string& ptr) const;
  std::size_t array_size(const std::string& ptr) const;

  /// Runs `f`, rethrowing library input errors as located ParseErrors.
  template <class F>
  auto guard(const std::string& ptr, F&& f) const -> decltype(f());

private:
  const Json& payload_;
  const LocationMap* locations_;
  const Budget& budget_;
};

struct CommandInfo {
  std::string name;
  std::string summary;
  /// Library operations the command reaches.
  std::vector<std::string> operations;
  /// Example payloads that exercise every operation listed.
  std::vector<Json> examples;
  /// With `execute` false only the inputs are loaded (schema validation).
  std::function<CommandOutcome(const PayloadContext&, bool execute)> handler;
};

const std::vector<CommandInfo>& command_table();
/// Adds or replaces a command (used to attach the acceptance suite).
void register_command(CommandInfo info);
const CommandInfo* find_command(const std::string& name);

}  // namespace noether

#include "noether/error.hpp"

namespace noether {

template <class F>
auto PayloadContext::guard(const std::string& ptr, F&& f) const -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    fail(ptr, e.what());
  } catch (const ValidationError& e) {
    fail(ptr, e.what());
  } catch (const DomainError& e) {
    fail(ptr, e.what());
  }
}

}  // namespace noether
