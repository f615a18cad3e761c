#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "missingnet/core_data.hpp"

namespace missingnet {

struct CsvOptions {
  Task task = Task::classification;
  /// Target column names. Empty means "the last column".
  std::vector<std::string> targets;
};

/// Reads a header-first CSV. Empty or non-numeric feature cells become missing.
/// Classification targets are string labels; regression targets must be numeric.
Dataset read_csv(std::istream& in, const CsvOptions& options);
Dataset read_csv_file(const std::string& path, const CsvOptions& options);

/// Writes features then targets; missing cells are left empty. `extra` columns
/// (one value per instance) are appended after the targets.
struct ExtraColumn {
  std::string name;
  std::vector<double> values;
};

void write_csv(std::ostream& out, const Dataset& dataset,
               const std::vector<ExtraColumn>& extra = {});
void write_csv_file(const std::string& path, const Dataset& dataset,
                    const std::vector<ExtraColumn>& extra = {});

}  // namespace missingnet
