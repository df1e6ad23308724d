#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocssg {

// args excludes the program name. Model path "-" reads from in.
// Returns 0 on success, 1 for a false decision under --exit-status, 2 on input errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ocssg
