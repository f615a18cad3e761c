#include "missingnet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <istream>
#include <ostream>

#include "missingnet/error.hpp"

namespace missingnet {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') {
      if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else {
        quoted = !quoted;
      }
    } else if (c == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

Dataset read_csv(std::istream& in, const CsvOptions& options) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCategory::invalid_input, "CSV is empty");
  const std::vector<std::string> header = split_row(line);
  require(header.size() >= 2, "CSV needs at least one feature and one target column");

  std::vector<std::size_t> target_cols;
  if (options.targets.empty()) {
    target_cols.push_back(header.size() - 1);
  } else {
    for (const std::string& name : options.targets) {
      auto it = std::find(header.begin(), header.end(), name);
      require(it != header.end(), "target column '" + name + "' not in CSV header");
      target_cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  require(options.task == Task::regression || target_cols.size() == 1,
          "classification takes exactly one target column");

  std::vector<bool> is_target(header.size(), false);
  for (std::size_t c : target_cols) is_target[c] = true;

  Dataset ds;
  ds.task = options.task;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (is_target[c]) continue;
    feature_cols.push_back(c);
    ds.feature_names.push_back(header[c]);
  }
  if (ds.task == Task::regression)
    for (std::size_t c : target_cols) ds.target_names.push_back(header[c]);

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    require(cells.size() == header.size(),
            "CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                " cells, header has " + std::to_string(header.size()));
    Instance inst;
    inst.features.reserve(feature_cols.size());
    inst.mask.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      const auto v = parse_number(cells[c]);
      inst.features.push_back(v.value_or(0.0));
      inst.mask.push_back(v.has_value());
    }
    if (ds.task == Task::classification) {
      const std::string& label = cells[target_cols.front()];
      require(!label.empty(), "CSV row " + std::to_string(row) + " has an empty label");
      auto it = std::find(ds.class_labels.begin(), ds.class_labels.end(), label);
      if (it == ds.class_labels.end()) {
        ds.class_labels.push_back(label);
        it = ds.class_labels.end() - 1;
      }
      inst.label = static_cast<Label>(it - ds.class_labels.begin());
    } else {
      for (std::size_t c : target_cols) {
        const auto v = parse_number(cells[c]);
        require(v.has_value(), "CSV row " + std::to_string(row) + " has a non-numeric target");
        inst.response.push_back(*v);
      }
    }
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

Dataset read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
  return read_csv(in, options);
}

void write_csv(std::ostream& out, const Dataset& dataset, const std::vector<ExtraColumn>& extra) {
  for (const ExtraColumn& col : extra)
    require(col.values.size() == dataset.size(), "extra column '" + col.name + "' has wrong length");

  std::vector<std::string> header = dataset.feature_names;
  if (dataset.task == Task::classification)
    header.emplace_back("label");
  else
    header.insert(header.end(), dataset.target_names.begin(), dataset.target_names.end());
  for (const ExtraColumn& col : extra) header.push_back(col.name);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';

  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const Instance& inst = dataset.instances[r];
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (i) out << ',';
      if (inst.mask[i]) out << format_number(inst.features[i]);
    }
    if (dataset.task == Task::classification) {
      out << ',';
      if (inst.label) out << dataset.class_labels.at(*inst.label);
    } else {
      for (std::size_t k = 0; k < dataset.output_count(); ++k) {
        out << ',';
        if (k < inst.response.size()) out << format_number(inst.response[k]);
      }
    }
    for (const ExtraColumn& col : extra) out << ',' << format_number(col.values[r]);
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Dataset& dataset,
                    const std::vector<ExtraColumn>& extra) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write '" + path + "'");
  write_csv(out, dataset, extra);
}

}  // namespace missingnet
