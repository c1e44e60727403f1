#pragma once

#include <stdexcept>
#include <string>

namespace lv {

enum class Errc {
  InvalidArgument,
  Dimension,
  Validation,
  Parse,
  Io,
  Precondition,
  Inconsistent,
  Numeric,
};

/// Every failure raised by the library carries one of the codes above so the
/// C boundary can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lv
