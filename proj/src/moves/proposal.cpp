#include "thmc/proposal.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace thmc {

namespace {

template <class T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

double parse_double(std::string_view token) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw InvalidArgument("invalid weight \"" + std::string(token) + "\"");
  }
  return v;
}

}  // namespace

FamilyWeights FamilyWeights::uniform() noexcept {
  FamilyWeights w;
  w.w_.fill(1.0 / 6.0);
  return w;
}

FamilyWeights FamilyWeights::from_array(const std::array<double, 6>& weights) {
  double sum = 0;
  for (const double v : weights) {
    if (!(v >= 0) || !std::isfinite(v)) throw InvalidArgument("family weights must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("family weights must sum to 1");
  FamilyWeights w;
  w.w_ = weights;
  return w;
}

FamilyWeights FamilyWeights::parse(std::string_view text) {
  std::array<double, 6> raw{};
  std::vector<std::string_view> tokens;
  while (true) {
    const auto comma = text.find(',');
    tokens.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  const bool named = tokens.front().find('=') != std::string_view::npos;
  if (named) {
    for (const auto tok : tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("expected family=weight");
      raw[family_index(parse_family(tok.substr(0, eq)))] = parse_double(tok.substr(eq + 1));
    }
  } else {
    if (tokens.size() != raw.size()) throw InvalidArgument("expected six weights");
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = parse_double(tokens[i]);
  }
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  for (const double v : raw) {
    if (v < 0) throw InvalidArgument("family weights must be >= 0");
  }
  if (!(sum > 0)) throw InvalidArgument("family weights must not all be zero");
  for (double& v : raw) v /= sum;
  FamilyWeights w;
  w.w_ = raw;
  return w;
}

std::string FamilyWeights::str() const {
  std::string out;
  for (const Family f : kAllFamilies) {
    if (!out.empty()) out.push_back(',');
    out += std::string(family_name(f)) + "=" + std::to_string(w_[family_index(f)]);
  }
  return out;
}

// ---------------------------------------------------------------------------

ProposalSampler::ProposalSampler(int length, FamilyWeights weights)
    : length_(length), weights_(weights) {
  check_path_length(length);
  const int T = length;
  for (int i = 1; i <= 2; ++i) {
    for (int t0 = 1; t0 <= T; ++t0) {
      for (int t1 = t0 + 1; t1 <= T; ++t1) {
        for (int t2 = t1 + 1; t2 <= T; ++t2) type1_.push_back({i, t0, t1, t2});
      }
    }
    for (int t = 2; t < T; ++t) type2_.push_back({i, t, 0, 0});
    for (int t0 = 1; t0 <= T - 2; ++t0) {
      for (int t1 = 1; t1 <= T - 2; ++t1) {
        if (t0 != t1) type4_.push_back({i, t0, t1, 0});
      }
    }
  }
  // state 0 = pattern A, 1 = pattern B; B is inconsistent when t1 = t0 + 1.
  for (int t0 = 1; t0 <= T - 1; ++t0) {
    for (int t1 = t0 + 1; t1 <= T - 1; ++t1) {
      two_by_two_.push_back({0, t0, t1, 0});
      if (t1 > t0 + 1) two_by_two_.push_back({1, t0, t1, 0});
    }
  }
  for (int a = 1; a <= T - 1; ++a) {
    for (int b = a; a + b <= T - 1; ++b) {
      for (int u = b; u <= T - 1 - a; ++u) {
        for (const bool swap : {false, true}) {
          for (const bool rev : {false, true}) sliding_.push_back({a, b, u, swap, rev});
        }
      }
    }
  }
}

Path ProposalSampler::random_path(Rng& rng) const {
  const std::uint64_t mask = (std::uint64_t{1} << length_) - 1;
  return Path::decode(rng() & mask, length_);
}

std::optional<Move> ProposalSampler::draw_family(Family family, Rng& rng) const {
  switch (family) {
    case Family::TypeIDegreeOne: {
      const Times& p = pick(type1_, rng);
      const Path path =
          random_path(rng).with_state(p.t0, p.state).with_state(p.t1, p.state).with_state(p.t2, p.state);
      return detail::try_type1(path, p.t0, p.t1, p.t2, nullptr);
    }
    case Family::CrossingSwap: {
      std::uniform_int_distribution<int> td(2, length_ - 1);
      const int t = td(rng);
      const Path first = random_path(rng);
      const Path second = random_path(rng).with_state(t, first.state(t));
      return detail::try_crossing(first, second, t, nullptr);
    }
    case Family::TwoByTwoSwap: {
      const Times& p = pick(two_by_two_, rng);
      const bool a = p.state == 0;
      const Path first = random_path(rng)
                             .with_state(p.t0, 1)
                             .with_state(p.t0 + 1, 1)
                             .with_state(p.t1, a ? 1 : 2)
                             .with_state(p.t1 + 1, a ? 2 : 1);
      const Path second = random_path(rng)
                              .with_state(p.t0, 2)
                              .with_state(p.t0 + 1, 2)
                              .with_state(p.t1, a ? 2 : 1)
                              .with_state(p.t1 + 1, a ? 1 : 2);
      return detail::try_two_by_two(a ? SwapPattern::A : SwapPattern::B, p.t0, p.t1, first, second,
                                    nullptr);
    }
    case Family::TypeIV: {
      if (type4_.empty()) return std::nullopt;
      const Times& p = pick(type4_, rng);
      const int i = p.state;
      const int j = 3 - i;
      const Path first =
          random_path(rng).with_state(p.t0, i).with_state(p.t0 + 1, i).with_state(p.t0 + 2, j);
      const Path second =
          random_path(rng).with_state(p.t1, i).with_state(p.t1 + 1, j).with_state(p.t1 + 2, j);
      return detail::try_type4(p.t0, p.t1, first, second, nullptr);
    }
    case Family::TypeIIDegreeOne: {
      const Times& p = pick(type2_, rng);
      const Path path = random_path(rng)
                            .with_state(1, p.state)
                            .with_state(length_, p.state)
                            .with_state(p.t0, 3 - p.state);
      return detail::try_type2(path, p.t0, nullptr);
    }
    case Family::Deg3Sliding: {
      if (sliding_.empty()) return std::nullopt;
      const Sliding& s = pick(sliding_, rng);
      return detail::try_sliding(length_, s.a, s.b, s.u, s.swap, s.reverse, nullptr);
    }
  }
  return std::nullopt;
}

std::optional<Proposal> ProposalSampler::operator()(Rng& rng) const {
  const auto& w = weights_.values();
  std::discrete_distribution<std::size_t> family_dist(w.begin(), w.end());
  const Family family = kAllFamilies[family_dist(rng)];
  std::optional<Move> move = draw_family(family, rng);
  const int sign = (rng() & 1U) != 0 ? 1 : -1;
  if (!move) return std::nullopt;
  return Proposal{std::move(*move), sign};
}

std::optional<Proposal> sample_proposal(int length, Rng& rng, const FamilyWeights& weights) {
  return ProposalSampler(length, weights)(rng);
}

}  // namespace thmc
