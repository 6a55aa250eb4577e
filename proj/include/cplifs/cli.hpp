#pragma once

namespace cplifs {

// Exit codes: 0 success, 2 invalid config/options, 3 budget or cap exceeded
// (partial output written with a trailing "#truncated" line), 4 internal
// numeric failure.
int cli_run(int argc, const char* const* argv);

}  // namespace cplifs
