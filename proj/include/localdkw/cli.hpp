#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace localdkw::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one CLI invocation. Returns 0 on success, 2 on usage errors (with a
// one-line diagnostic on err), 1 on I/O errors. All CSV goes to `out`
// unless an --out file is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localdkw::cli
