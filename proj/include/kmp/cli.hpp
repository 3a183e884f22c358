#pragma once

namespace kmp::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error, 3 audit mismatch.
int run(int argc, char** argv);

} // namespace kmp::cli
