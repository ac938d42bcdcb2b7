#include "core/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace msl {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string field = comma == std::string::npos
                            ? line.substr(start)
                            : line.substr(start, comma - start);
    // trim surrounding whitespace / stray CR
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string()
                                         : field.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv: bad float '" + s + "' on row " +
                                std::to_string(row));
  }
  return v;
}

std::int64_t parse_label(const std::string& s, std::size_t row) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv: bad label '" + s + "' on row " +
                                std::to_string(row));
  }
  return v;
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("csv: empty input");
  }
  const auto header = split_fields(line);
  if (header.size() < 2 || header.back() != "label") {
    throw std::invalid_argument("csv: expected header x1,...,xd,label");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (header[k] != "x" + std::to_string(k + 1)) {
      throw std::invalid_argument("csv: expected header column x" +
                                  std::to_string(k + 1));
    }
  }

  std::vector<double> values;
  std::vector<std::int64_t> labels;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() != d + 1) {
      throw std::invalid_argument("csv: row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(d + 1));
    }
    for (std::size_t k = 0; k < d; ++k) values.push_back(parse_double(fields[k], row));
    labels.push_back(parse_label(fields[d], row));
  }

  const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd points(n, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d); ++k)
      points(i, k) = values[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(k)];
  return Dataset(std::move(points), std::move(labels));
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  const Eigen::Index d = data.dim();
  for (Eigen::Index k = 0; k < d; ++k) out << 'x' << (k + 1) << ',';
  out << "label\n";
  char buf[64];
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data.points()(i, k));
      out << buf << ',';
    }
    out << data.label(i) << '\n';
  }
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_dataset_csv(in);
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  write_dataset_csv(data, out);
  if (!out) throw std::runtime_error("failed writing dataset file: " + path);
}

}  // namespace msl
