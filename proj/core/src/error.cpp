#include "fracsum/error.hpp"

namespace fracsum {

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace fracsum
