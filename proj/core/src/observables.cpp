#include "catlight/observables.hpp"

#include <cstdio>
#include <fstream>

#include "catlight/errors.hpp"

namespace catlight {

void ObservableSeries::add_column(std::string name, std::vector<double> values) {
  columns.emplace_back(std::move(name), std::move(values));
}

namespace {

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_rows(std::ofstream& out, const std::string& key_name,
                const std::vector<double>& key,
                const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
  out << key_name;
  for (const auto& [name, values] : columns) {
    if (values.size() != key.size()) {
      throw Error("write_csv: column '" + name + "' does not match the key grid");
    }
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t i = 0; i < key.size(); ++i) {
    out << format_value(key[i]);
    for (const auto& [name, values] : columns) {
      (void)name;
      out << ',' << format_value(values[i]);
    }
    out << '\n';
  }
}

}  // namespace

void write_csv(const ObservableSeries& series, const std::string& path,
               const std::string& resolved_config) {
  write_csv_table("t", series.time, series.columns, path, resolved_config);
}

void write_csv_table(const std::string& key_name, const std::vector<double>& key,
                     const std::vector<std::pair<std::string, std::vector<double>>>& columns,
                     const std::string& path, const std::string& resolved_config) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("write_csv: cannot open '" + path + "' for writing");
  out << "# resolved-config: " << resolved_config << '\n';
  write_rows(out, key_name, key, columns);
  if (!out) throw Error("write_csv: write to '" + path + "' failed");
}

}  // namespace catlight
