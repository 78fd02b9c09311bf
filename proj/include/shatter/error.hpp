#pragma once

#include <stdexcept>
#include <string>

namespace shatter {

/// Raised for problems with user-supplied input: unreadable files, malformed
/// cells, parameters outside their documented domain.
class input_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace shatter
