#include "thmc/path_table.hpp"

#include <algorithm>

#include "thmc/error.hpp"

namespace thmc {

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("count addition overflows int64");
  return out;
}

Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("count multiplication overflows int64");
  }
  return out;
}

PathTable::PathTable(int length) : length_(length) { check_path_length(length); }

PathTable::PathTable(int length, std::span<const Entry> entries) : PathTable(length) {
  std::vector<Entry> sorted(entries.begin(), entries.end());
  for (const auto& [path, c] : sorted) {
    if (path.length() != length) {
      throw InvalidArgument("path " + path.str() + " does not have length " +
                            std::to_string(length));
    }
    if (c < 0) throw InvalidArgument("negative count for path " + path.str());
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [path, c] : sorted) {
    if (c == 0) continue;
    if (!entries_.empty() && entries_.back().first == path) {
      entries_.back().second = checked_add(entries_.back().second, c);
    } else {
      entries_.emplace_back(path, c);
    }
    total_ = checked_add(total_, c);
  }
}

PathTable::PathTable(int length, std::initializer_list<Entry> entries)
    : PathTable(length, std::span<const Entry>(entries.begin(), entries.size())) {}

PathTable::PathTable(int length, std::vector<Entry> sorted_entries, Sorted)
    : length_(length), entries_(std::move(sorted_entries)) {
  for (const auto& e : entries_) total_ = checked_add(total_, e.second);
}

PathTable PathTable::from_strings(
    std::initializer_list<std::pair<std::string_view, Count>> entries) {
  if (entries.size() == 0) throw InvalidArgument("from_strings needs at least one entry");
  std::vector<Entry> parsed;
  for (const auto& [s, c] : entries) parsed.emplace_back(Path::parse(s), c);
  return PathTable(parsed.front().first.length(), parsed);
}

PathTable PathTable::from_dense(int length, std::span<const Count> counts) {
  if (length > kDenseLengthCap) throw InvalidArgument("T above dense cap");
  if (counts.size() != path_count(length)) throw InvalidArgument("dense vector has wrong size");
  std::vector<Entry> entries;
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw InvalidArgument("negative count in dense vector");
    if (counts[i] > 0) entries.emplace_back(Path::decode(i, length), counts[i]);
  }
  return PathTable(length, std::move(entries), Sorted{});
}

Count PathTable::count(const Path& path) const noexcept {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), path,
                                   [](const Entry& e, const Path& p) { return e.first < p; });
  return (it != entries_.end() && it->first == path) ? it->second : 0;
}

std::vector<Count> PathTable::dense() const {
  if (length_ > kDenseLengthCap) throw InvalidArgument("T above dense cap");
  std::vector<Count> out(path_count(length_), 0);
  for (const auto& [path, c] : entries_) out[path.encode()] = c;
  return out;
}

PathTable PathTable::swapped() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [path, c] : entries_) out.emplace_back(path.swapped(), c);
  return PathTable(length_, out);
}

std::string PathTable::str() const {
  std::string out;
  for (const auto& [path, c] : entries_) {
    if (!out.empty()) out.push_back(' ');
    out += path.str() + ":" + std::to_string(c);
  }
  return out;
}

PathTable add_scaled(const PathTable& table, std::span<const PathTable::Entry> deltas, Count scale) {
  std::vector<PathTable::Entry> out;
  out.reserve(table.entries_.size() + deltas.size());
  auto a = table.entries_.begin();
  auto b = deltas.begin();
  auto push = [&](const Path& p, Count c) {
    if (c < 0) throw InvalidArgument("add_scaled produced a negative count at " + p.str());
    if (c > 0) out.emplace_back(p, c);
  };
  while (a != table.entries_.end() || b != deltas.end()) {
    if (b == deltas.end() || (a != table.entries_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == table.entries_.end() || b->first < a->first) {
      push(b->first, checked_mul(scale, b->second));
      ++b;
    } else {
      push(a->first, checked_add(a->second, checked_mul(scale, b->second)));
      ++a;
      ++b;
    }
  }
  return PathTable(table.length_, std::move(out), PathTable::Sorted{});
}

std::size_t PathTableHash::operator()(const PathTable& table) const noexcept {
  std::size_t h = static_cast<std::size_t>(table.length());
  for (const auto& [path, c] : table) {
    h ^= std::hash<std::uint64_t>{}(path.encode()) + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
    h ^= std::hash<Count>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  }
  return h;
}

}  // namespace thmc
