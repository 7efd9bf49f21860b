#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psk {

// Entry point of the psk tool. Returns 0 on success, 2 on validation or
// usage errors and 1 on runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Arguments without the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psk
