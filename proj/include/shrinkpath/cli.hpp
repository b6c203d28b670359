#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace shrinkpath {

// Entry point behind the shrinkpath binary. Subcommands: fit, qm, yonx,
// ellipse, info. Returns 0 on success, 2 on usage errors, 1 on data or
// model errors; diagnostics go to err, summaries to out.
int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace shrinkpath
