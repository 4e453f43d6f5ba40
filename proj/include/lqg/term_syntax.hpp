#pragma once

#include <string_view>

#include "lqg/algebra.hpp"

namespace lqg {

/// Parses the prefix term syntax: a variable "x1", "x2", ...; a constant by
/// its bare name (or "(e)"); an application "(op arg ...)". Throws
/// SyntaxError. Operation names are resolved later, against an algebra.
Term parse_term(std::string_view text);

}  // namespace lqg
