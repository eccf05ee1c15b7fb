#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thmc/error.hpp"
#include "thmc/path_table.hpp"

namespace thmc {

/// External one-character symbols for states 1 and 2, e.g. "M=1,F=2".
class SymbolMap {
 public:
  /// Maps '1' -> 1 and '2' -> 2.
  SymbolMap() = default;
  /// Throws InvalidArgument unless both states get exactly one distinct symbol.
  static SymbolMap parse(std::string_view spec);

  /// 0 for an unknown symbol.
  int state(char symbol) const noexcept;
  char symbol(int state) const noexcept { return symbols_[static_cast<std::size_t>(state - 1)]; }
  std::string str() const;

 private:
  std::array<char, 2> symbols_{'1', '2'};
};

/// Malformed input, located by 1-based line number (0 when not tied to a line).
class IngestError : public Error {
 public:
  IngestError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Record {
  std::string path;
  Count count;
  std::size_t line;
};

struct Dataset {
  int length = 0;
  SymbolMap map;
  std::vector<Record> records;
  /// Duplicate path lines accumulate.
  PathTable table{kMinPathLength};
};

/// CSV with lines "path,count". Blank lines and lines starting with '#' are
/// skipped, and the first data line may be a header whose count field is the
/// word "count". Every path must have the same length and only mapped symbols;
/// counts are positive integers.
Dataset read_dataset(std::istream& in, const SymbolMap& map, const std::string& source = "<input>");
Dataset ingest(const std::filesystem::path& file, const SymbolMap& map = {});

/// Inverse of read_dataset: header then one line per supported path.
void write_table_csv(std::ostream& out, const PathTable& table, const SymbolMap& map = {});

}  // namespace thmc
