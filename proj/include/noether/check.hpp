#pragma once

#include <string>

namespace noether {

/// One named property with its verdict and, on failure, a witness.
struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string witness;
};

}  // namespace noether
