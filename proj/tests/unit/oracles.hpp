#pragma once

// Brute-force reference computations on plain state vectors. Nothing here
// calls into the library, so agreement with it is an independent check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using States = std::vector<int>;
/// Path string ("1121") -> count.
using Table = std::map<std::string, std::int64_t>;

inline States states_of(const std::string& s) {
  States out;
  for (char c : s) out.push_back(c - '0');
  return out;
}

inline std::string string_of(const States& s) {
  std::string out;
  for (int v : s) out.push_back(static_cast<char>('0' + v));
  return out;
}

/// (b11, b12, b21, b22) by direct counting.
inline std::array<std::int64_t, 4> transitions(const std::string& path) {
  std::array<std::int64_t, 4> b{};
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    const int i = path[t] - '1';
    const int j = path[t + 1] - '1';
    ++b[static_cast<std::size_t>(2 * i + j)];
  }
  return b;
}

inline std::array<std::int64_t, 4> suff_stat(const Table& x) {
  std::array<std::int64_t, 4> b{};
  for (const auto& [p, c] : x) {
    const auto tp = transitions(p);
    for (int k = 0; k < 4; ++k) b[k] += c * tp[k];
  }
  return b;
}

inline std::array<std::int64_t, 2> initial(const Table& x) {
  std::array<std::int64_t, 2> f{};
  for (const auto& [p, c] : x) f[p.front() == '1' ? 0 : 1] += c;
  return f;
}

/// Every path of length T in lexicographic order of the digit string.
inline std::vector<std::string> all_paths(int T) {
  std::vector<std::string> out;
  for (int code = 0; code < (1 << T); ++code) {
    std::string s;
    for (int t = T - 1; t >= 0; --t) s.push_back(((code >> t) & 1) ? '2' : '1');
    out.push_back(s);
  }
  return out;
}

/// Every table of total count n over the paths of length T.
inline std::vector<Table> all_tables(int T, int n) {
  const auto paths = all_paths(T);
  std::vector<Table> out;
  std::vector<std::int64_t> counts(paths.size(), 0);
  // Stars and bars over the cells.
  auto rec = [&](auto&& self, std::size_t cell, int left) -> void {
    if (cell + 1 == paths.size()) {
      counts[cell] = left;
      Table t;
      for (std::size_t k = 0; k < paths.size(); ++k) {
        if (counts[k] > 0) t[paths[k]] = counts[k];
      }
      out.push_back(t);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[cell] = c;
      self(self, cell + 1, left - c);
    }
  };
  rec(rec, 0, n);
  return out;
}

/// Naive fiber: filter all tables of total n = sum(b)/(T-1).
inline std::vector<Table> naive_fiber(int T, const std::array<std::int64_t, 4>& b) {
  const std::int64_t total = b[0] + b[1] + b[2] + b[3];
  if (total % (T - 1) != 0) return {};
  std::vector<Table> out;
  for (const Table& t : all_tables(T, static_cast<int>(total / (T - 1)))) {
    if (suff_stat(t) == b) out.push_back(t);
  }
  return out;
}

/// Move as path string -> signed delta, with zero entries removed.
using Delta = std::map<std::string, std::int64_t>;

inline Delta canonical(Delta d) {
  for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
  if (!d.empty() && d.begin()->second < 0) {
    for (auto& kv : d) kv.second = -kv.second;
  }
  return d;
}

/// z^t_{ij} for t = 1..T-1 as rows {11, 12, 21, 22}.
inline std::vector<std::array<std::int64_t, 4>> move_graph(const Delta& z, int T) {
  std::vector<std::array<std::int64_t, 4>> g(static_cast<std::size_t>(T - 1), {0, 0, 0, 0});
  for (const auto& [p, d] : z) {
    for (int t = 0; t + 1 < T; ++t) {
      const int i = p[t] - '1';
      const int j = p[t + 1] - '1';
      g[static_cast<std::size_t>(t)][static_cast<std::size_t>(2 * i + j)] += d;
    }
  }
  return g;
}

/// Type II degree one moves built straight from their definition: every
/// cycle (s_1 = s_T = i, s_t = j != i) against its rotation starting at s_t.
inline std::vector<Delta> type2_moves(int T) {
  std::vector<Delta> out;
  for (const auto& p : all_paths(T)) {
    if (p.front() != p.back()) continue;
    for (int t = 2; t <= T - 1; ++t) {
      if (p[t - 1] == p.front()) continue;
      // (s_t, ..., s_{T-1}, s_1, ..., s_t)
      std::string rot = p.substr(t - 1, T - t) + p.substr(0, t);
      Delta d;
      d[p] += 1;
      d[rot] -= 1;
      d = canonical(d);
      if (!d.empty() && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  }
  return out;
}

/// Exact rank of a small integer matrix by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t k = r + 1; k < rows; ++k) {
      const std::int64_t f = m[k][c];
      const std::int64_t p = m[r][c];
      if (f == 0) continue;
      std::int64_t g = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        m[k][j] = m[k][j] * p - m[r][j] * f;
        g = std::gcd(g, m[k][j]);
      }
      if (g > 1) {
        for (auto& v : m[k]) v /= g;
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

/// Rows b11, b12, b21, b22 (and init1, init2 when `with_initial`) over all paths.
inline std::vector<std::vector<std::int64_t>> config_rows(int T, bool with_initial) {
  const auto paths = all_paths(T);
  std::vector<std::vector<std::int64_t>> rows(with_initial ? 6 : 4,
                                           std::vector<std::int64_t>(paths.size(), 0));
  for (std::size_t c = 0; c < paths.size(); ++c) {
    const auto b = transitions(paths[c]);
    for (int k = 0; k < 4; ++k) rows[k][c] = b[k];
    if (with_initial) rows[paths[c].front() == '1' ? 4 : 5][c] = 1;
  }
  return rows;
}

/// Maximum likelihood probabilities of a log-linear model by generalized
/// iterative scaling. Every column of `rows` must sum to the same constant.
inline std::vector<double> gis_fit(const std::vector<std::vector<std::int64_t>>& rows,
                                   const std::vector<double>& counts, int iterations = 200000) {
  const std::size_t R = rows.size();
  const std::size_t K = counts.size();
  double C = 0;
  for (std::size_t r = 0; r < R; ++r) C += static_cast<double>(rows[r][0]);
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::vector<double> target(R, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t k = 0; k < K; ++k) target[r] += static_cast<double>(rows[r][k]) * counts[k];
  }
  std::vector<double> p(K, 1.0 / static_cast<double>(K));
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> fitted(R, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t k = 0; k < K; ++k) fitted[r] += static_cast<double>(rows[r][k]) * n * p[k];
    }
    double z = 0;
    for (std::size_t k = 0; k < K; ++k) {
      double logf = 0;
      for (std::size_t r = 0; r < R; ++r) {
        if (rows[r][k] != 0) logf += static_cast<double>(rows[r][k]) * std::log(target[r] / fitted[r]);
      }
      p[k] *= std::exp(logf / C);
      z += p[k];
    }
    for (auto& v : p) v /= z;
  }
  return p;
}

/// Counts of the Klotz data in the order MMMM, MMMF, ..., FFFF (M = 1, F = 2).
inline Table klotz() {
  const std::vector<std::pair<std::string, std::int64_t>> raw = {
      {"MMMM", 8},  {"MMMF", 14}, {"MMFM", 13}, {"MMFF", 19}, {"MFMM", 11}, {"MFMF", 9},
      {"MFFM", 11}, {"MFFF", 13}, {"FMMM", 13}, {"FMMF", 11}, {"FMFM", 9},  {"FMFF", 9},
      {"FFMM", 10}, {"FFMF", 8},  {"FFFM", 9},  {"FFFF", 10}};
  Table t;
  for (auto [p, c] : raw) {
    for (char& ch : p) ch = ch == 'M' ? '1' : '2';
    t[p] += c;
  }
  return t;
}

}  // namespace oracle
