#pragma once

#include <stdexcept>
#include <string>

namespace noether {

/// Base of every error raised by the library. The kind decides the CLI exit code.
class Error : public std::runtime_error {
public:
  enum class Kind { parse, validation, domain, capability, resource, oracle };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }
  const char* kind_name() const noexcept;

private:
  Kind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(Kind::parse, w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(Kind::validation, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(Kind::domain, w) {}
};
/// The operation exists but is not implemented for this kind of input.
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& w) : Error(Kind::capability, w) {}
};
/// A configured budget was exhausted. `budget()` names it.
struct ResourceError : Error {
  ResourceError(std::string budget, const std::string& w)
      : Error(Kind::resource, w), budget_(std::move(budget)) {}
  const std::string& budget() const noexcept { return budget_; }

private:
  std::string budget_;
};
struct OracleError : Error {
  explicit OracleError(const std::string& w) : Error(Kind::oracle, w) {}
};

inline const char* Error::kind_name() const noexcept {
  switch (kind_) {
    case Kind::parse: return "parse";
    case Kind::validation: return "validation";
    case Kind::domain: return "domain";
    case Kind::capability: return "capability";
    case Kind::resource: return "resource";
    case Kind::oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace noether
