#pragma once

#include <string>
#include <utility>
#include <vector>

namespace catlight {

/// Named real-valued series sharing one time grid. Complex quantities are
/// stored as two columns with _re/_im suffixes by the producers.
struct ObservableSeries {
  std::vector<double> time;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  void add_column(std::string name, std::vector<double> values);
};

/// Writes `# resolved-config: <stamp>`, a header row, then one row per time
/// sample. Values are printed with %.17g so re-running a spec reproduces the
/// file byte for byte.
void write_csv(const ObservableSeries& series, const std::string& path,
               const std::string& resolved_config);

/// A table variant keyed by an arbitrary leading column instead of time.
void write_csv_table(const std::string& key_name, const std::vector<double>& key,
                     const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                     const std::string& path, const std::string& resolved_config);

}  // namespace catlight
