#include "thmc/path.hpp"

#include "thmc/error.hpp"

namespace thmc {

void check_path_length(int length) {
  if (length < kMinPathLength || length > kMaxPathLength) {
    throw InvalidArgument("path length " + std::to_string(length) + " outside [" +
                          std::to_string(kMinPathLength) + ", " + std::to_string(kMaxPathLength) +
                          "]");
  }
}

std::uint64_t path_count(int length) {
  check_path_length(length);
  return std::uint64_t{1} << length;
}

Path Path::decode(std::uint64_t index, int length) {
  if (index >= path_count(length)) {
    throw InvalidArgument("path index " + std::to_string(index) + " out of range for T=" +
                          std::to_string(length));
  }
  return Path(length, index);
}

Path Path::from_states(std::span<const int> states) {
  const int length = static_cast<int>(states.size());
  check_path_length(length);
  std::uint64_t code = 0;
  for (const int s : states) {
    if (s != 1 && s != 2) {
      throw InvalidArgument("state " + std::to_string(s) + " is not 1 or 2");
    }
    code = (code << 1U) | static_cast<std::uint64_t>(s - 1);
  }
  return Path(length, code);
}

Path Path::parse(std::string_view digits) {
  std::vector<int> states;
  states.reserve(digits.size());
  for (const char c : digits) {
    if (c != '1' && c != '2') {
      throw InvalidArgument("invalid state symbol '" + std::string(1, c) + "' in path \"" +
                            std::string(digits) + "\"");
    }
    states.push_back(c - '0');
  }
  return from_states(states);
}

Path Path::flat(int length, int state) {
  check_path_length(length);
  if (state != 1 && state != 2) throw InvalidArgument("state must be 1 or 2");
  return Path(length, state == 1 ? 0 : path_count(length) - 1);
}

Path Path::single_step(int length, int from, int at) {
  check_path_length(length);
  if (from != 1 && from != 2) throw InvalidArgument("state must be 1 or 2");
  if (at < 1 || at > length - 1) {
    throw InvalidArgument("single-step time " + std::to_string(at) + " outside [1, T-1]");
  }
  const std::uint64_t tail = (std::uint64_t{1} << (length - at)) - 1;
  const Path up(length, tail);  // 1..1 2..2
  return from == 1 ? up : up.swapped();
}

std::vector<int> Path::states() const { return segment(1, length_); }

std::vector<int> Path::segment(int from, int to) const {
  std::vector<int> out;
  for (int t = from; t <= to; ++t) out.push_back(state(t));
  return out;
}

std::string Path::str() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(length_));
  for (int t = 1; t <= length_; ++t) out.push_back(static_cast<char>('0' + state(t)));
  return out;
}

bool Path::is_flat() const noexcept {
  return code_ == 0 || code_ == (std::uint64_t{1} << length_) - 1;
}

Path Path::with_state(int t, int state) const {
  if (t < 1 || t > length_) throw InvalidArgument("time index out of range");
  if (state != 1 && state != 2) throw InvalidArgument("state must be 1 or 2");
  const std::uint64_t bit = std::uint64_t{1} << (length_ - t);
  return Path(length_, state == 1 ? (code_ & ~bit) : (code_ | bit));
}

Path Path::swapped() const noexcept {
  return Path(length_, code_ ^ ((std::uint64_t{1} << length_) - 1));
}

Path Path::reversed() const noexcept {
  std::uint64_t r = 0;
  std::uint64_t c = code_;
  for (int i = 0; i < length_; ++i, c >>= 1U) r = (r << 1U) | (c & 1U);
  return Path(length_, r);
}

}  // namespace thmc
