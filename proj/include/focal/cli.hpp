#pragma once

namespace focal {

/// Entry point for the `focal` tool.  Returns the process exit code:
/// 0 success, 2 input problem, 3 degenerate geometry.
int run_cli(int argc, const char* const* argv);

}  // namespace focal
