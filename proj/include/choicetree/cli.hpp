#pragma once

namespace ctree {

/// Exit codes: 0 success, 1 a statistical test failed, 2 usage or range error.
int dispatch(int argc, const char* const* argv);

}  // namespace ctree
