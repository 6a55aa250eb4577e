#pragma once
#include <string>

#include "cplifs/system.hpp"

namespace cplifs {

// Config document: {"maps":[{"breakpoints":[...],"slopes":[...],"offset":t},...]}
// Numbers may be JSON numbers or "p/q" / decimal strings. When every value has
// an exact rational reading the system carries its rational mirror.
Cplifs load_system(const std::string& path);
Cplifs parse_system_json(const std::string& json_text);

std::string system_to_json(const Cplifs& F);

}  // namespace cplifs
