#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shrinkpath/traces.hpp"

namespace shrinkpath {

enum class ExportFormat { csv, json };

ExportFormat parse_export_format(const std::string& s);

// CSV: one file per trace type (coef, spat, rmse, exev, infd, lr), first
// column "m", numeric cells in shortest round-trip form, infinities as the
// token "inf", absent inferior-direction rows left empty. JSON: a single
// traces.json mirroring the bundle with knot metadata (infinities become
// the string "inf"). Files are written atomically (temp file + rename).
std::vector<std::filesystem::path> export_traces(const TraceBundle& bundle,
                                                 const std::vector<std::string>& coef_names,
                                                 ExportFormat format,
                                                 const std::filesystem::path& dest_dir);

/// Serialize the bundle to the JSON document used by export_traces.
std::string traces_to_json(const TraceBundle& bundle,
                           const std::vector<std::string>& coef_names);

/// Write a whole file atomically (temp file in the same directory + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace shrinkpath
