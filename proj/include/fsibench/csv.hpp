#pragma once

#include <string>
#include <vector>

namespace fsibench::csv {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Buffered CSV writer with a fixed header; rows are written in the order
/// they are appended, so callers control determinism.
class Writer {
  public:
    explicit Writer(std::vector<std::string> header);

    void append_row(const std::vector<std::string>& cells);
    void append_row_values(const std::vector<double>& values);

    const std::vector<std::string>& header() const { return header_; }
    std::string to_string() const;
    void save(const std::string& path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parses CSV text produced by Writer (no quoting, comma-separated).
Table parse(const std::string& text);
Table load(const std::string& path);

}  // namespace fsibench::csv
