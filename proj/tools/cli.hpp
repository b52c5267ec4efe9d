#pragma once

#include <iosfwd>

namespace hyperchrom::cli {

// Exit status: 0 success, 1 validation or library failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyperchrom::cli
