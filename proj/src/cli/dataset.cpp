#include "thmc/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace thmc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string describe(char c) {
  if (c >= 0x20 && c < 0x7f) return std::string("'") + c + "'";
  return "byte " + std::to_string(static_cast<unsigned char>(c));
}

}  // namespace

SymbolMap SymbolMap::parse(std::string_view spec) {
  SymbolMap map;
  std::array<bool, 2> seen{};
  std::size_t items = 0;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = trim(spec.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("mapping item \"" + std::string(item) +
                            "\" is not of the form SYMBOL=STATE");
    }
    const std::string_view sym = trim(item.substr(0, eq));
    const std::string_view st = trim(item.substr(eq + 1));
    if (sym.size() != 1) throw InvalidArgument("mapping symbols must be single characters");
    if (st != "1" && st != "2") throw InvalidArgument("mapping states must be 1 or 2");
    const std::size_t k = st == "1" ? 0 : 1;
    if (seen[k]) throw InvalidArgument("state " + std::string(st) + " is mapped twice");
    seen[k] = true;
    map.symbols_[k] = sym.front();
    ++items;
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  if (items != 2 || !seen[0] || !seen[1]) {
    throw InvalidArgument("mapping must name exactly one symbol for each of states 1 and 2");
  }
  if (map.symbols_[0] == map.symbols_[1]) throw InvalidArgument("mapping symbols must differ");
  return map;
}

int SymbolMap::state(char symbol) const noexcept {
  if (symbol == symbols_[0]) return 1;
  if (symbol == symbols_[1]) return 2;
  return 0;
}

std::string SymbolMap::str() const {
  return std::string(1, symbols_[0]) + "=1," + std::string(1, symbols_[1]) + "=2";
}

IngestError::IngestError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

Dataset read_dataset(std::istream& in, const SymbolMap& map, const std::string& source) {
  Dataset data;
  data.map = map;
  std::vector<PathTable::Entry> entries;
  std::string raw;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw IngestError(source, line_no, "expected \"path,count\"");
    }
    const std::string_view path = trim(line.substr(0, comma));
    const std::string_view count_text = trim(line.substr(comma + 1));
    if (first_data_line && count_text == "count") {
      first_data_line = false;
      continue;
    }
    first_data_line = false;
    if (count_text.find(',') != std::string_view::npos) {
      throw IngestError(source, line_no, "expected exactly two fields");
    }
    if (path.empty()) throw IngestError(source, line_no, "empty path");

    std::vector<int> states;
    states.reserve(path.size());
    for (const char c : path) {
      const int s = map.state(c);
      if (s == 0) {
        throw IngestError(source, line_no,
                          "unknown symbol " + describe(c) + " in path \"" + std::string(path) +
                              "\" (mapping " + map.str() + ")");
      }
      states.push_back(s);
    }
    const int length = static_cast<int>(path.size());
    if (data.length == 0) {
      if (length < kMinPathLength || length > kMaxPathLength) {
        throw IngestError(source, line_no,
                          "path length " + std::to_string(length) + " outside " +
                              std::to_string(kMinPathLength) + ".." + std::to_string(kMaxPathLength));
      }
      data.length = length;
    } else if (length != data.length) {
      throw IngestError(source, line_no,
                        "path \"" + std::string(path) + "\" has length " + std::to_string(length) +
                            ", expected " + std::to_string(data.length));
    }

    Count count = 0;
    const auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      throw IngestError(source, line_no, "count \"" + std::string(count_text) + "\" is not an integer");
    }
    if (count < 1) throw IngestError(source, line_no, "count must be >= 1");

    data.records.push_back({std::string(path), count, line_no});
    entries.emplace_back(Path::from_states(states), count);
  }
  if (data.records.empty()) throw IngestError(source, 0, "no data lines");
  try {
    data.table = PathTable(data.length, entries);
  } catch (const OverflowError& e) {
    throw IngestError(source, 0, e.what());
  }
  return data;
}

Dataset ingest(const std::filesystem::path& file, const SymbolMap& map) {
  std::ifstream in(file);
  if (!in) throw IngestError(file.string(), 0, "cannot open file");
  return read_dataset(in, map, file.string());
}

void write_table_csv(std::ostream& out, const PathTable& table, const SymbolMap& map) {
  out << "path,count\n";
  for (const auto& [path, count] : table) {
    for (int t = 1; t <= path.length(); ++t) out << map.symbol(path.state(t));
    out << ',' << count << '\n';
  }
}

}  // namespace thmc
