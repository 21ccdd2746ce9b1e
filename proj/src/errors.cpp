#include "lpnq/errors.hpp"

namespace lpnq {

ParseError::ParseError(std::string const& msg, std::size_t l, std::size_t c)
    : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      column(c) {}

}  // namespace lpnq
