#pragma once

#include <string>

#include "shrinkpath/table.hpp"

namespace shrinkpath {

/// Bundled benchmark table by name; currently only "portland".
Table builtin_dataset(const std::string& name);

/// Woods-Steinour-Starke Portland cement data: 13 mixtures, columns
/// heat, p3ca, p3cs, p4caf, p2cs.
Table portland_dataset();

}  // namespace shrinkpath
