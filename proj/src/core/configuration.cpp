#include "thmc/configuration.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "thmc/error.hpp"
#include "thmc/stats.hpp"

namespace thmc {

std::string_view variant_name(Variant v) noexcept {
  return v == Variant::WithInitial ? "with-initial" : "without-initial";
}

std::string ConfigurationRow::name() const {
  if (kind == Kind::Initial) return "init" + std::to_string(from);
  return "b" + std::to_string(from) + std::to_string(to);
}

Configuration::Configuration(int length, Variant variant) : length_(length), variant_(variant) {
  if (length < kMinPathLength) throw InvalidArgument("configuration needs T >= 3");
  if (length > kDenseLengthCap) {
    throw InvalidArgument("configuration T=" + std::to_string(length) + " above dense cap " +
                          std::to_string(kDenseLengthCap));
  }
  columns_ = path_count(length);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) rows_.push_back({ConfigurationRow::Kind::Transition, i, j});
  }
  if (variant == Variant::WithInitial) {
    rows_.push_back({ConfigurationRow::Kind::Initial, 1, 0});
    rows_.push_back({ConfigurationRow::Kind::Initial, 2, 0});
  }
  entries_.reserve(columns_ * rows_.size());
  for (std::uint64_t c = 0; c < columns_; ++c) {
    const Path p = Path::decode(c, length);
    const TransitionStat b = transitions(p);
    entries_.push_back(static_cast<int>(b.b11));
    entries_.push_back(static_cast<int>(b.b12));
    entries_.push_back(static_cast<int>(b.b21));
    entries_.push_back(static_cast<int>(b.b22));
    if (variant == Variant::WithInitial) {
      entries_.push_back(p.first() == 1 ? 1 : 0);
      entries_.push_back(p.first() == 2 ? 1 : 0);
    }
  }
}

std::vector<Count> Configuration::apply(const PathTable& table) const {
  if (table.length() != length_) throw InvalidArgument("table length does not match configuration");
  std::vector<Count> out(rows_.size(), 0);
  for (const auto& [path, c] : table) {
    const auto col = column(path.encode());
    for (std::size_t r = 0; r < out.size(); ++r) {
      out[r] = checked_add(out[r], checked_mul(c, col[r]));
    }
  }
  return out;
}

int Configuration::rank(double tolerance) const {
  // A^T is folded into a small triangular factor R block by block; R^T R = A A^T,
  // so R has the singular values of A.
  const Eigen::Index m = rows();
  constexpr std::uint64_t kBlock = 4096;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
  for (std::uint64_t start = 0; start < columns_; start += kBlock) {
    const auto width = static_cast<Eigen::Index>(std::min(kBlock, columns_ - start));
    Eigen::MatrixXd stacked(m + width, m);
    stacked.topRows(m) = r;
    for (Eigen::Index k = 0; k < width; ++k) {
      for (Eigen::Index i = 0; i < m; ++i) {
        stacked(m + k, i) = entry(static_cast<int>(i), start + static_cast<std::uint64_t>(k));
      }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tolerance * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace thmc
