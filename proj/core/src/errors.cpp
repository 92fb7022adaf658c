#include "hartree/errors.hpp"

namespace hartree::detail {

void throw_config(const std::string& what) { throw ConfigError(what); }

void throw_precondition(const std::string& what) { throw PreconditionError(what); }

}  // namespace hartree::detail
