#include "majority/coloring.hpp"

#include <algorithm>
#include <numeric>

#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {

Coloring::Coloring(std::uint32_t n, Label fill) : labels_(n, fill) {
  if (fill != kRed && fill != kBlue) throw ValidationError("labels must be +1 or -1");
  red_count_ = fill == kRed ? n : 0;
}

Coloring::Coloring(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (Label l : labels_) {
    if (l != kRed && l != kBlue) throw ValidationError("labels must be +1 or -1");
    red_count_ += l == kRed;
  }
}

Coloring Coloring::from_string(std::string_view text) {
  std::vector<Label> labels;
  labels.reserve(text.size());
  for (char ch : text) {
    if (ch == 'R') {
      labels.push_back(kRed);
    } else if (ch == 'B') {
      labels.push_back(kBlue);
    } else {
      throw ValidationError(std::string("coloring dump: unexpected character '") + ch + "'");
    }
  }
  return Coloring(std::move(labels));
}

std::string Coloring::to_string() const {
  std::string out(labels_.size(), 'B');
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == kRed) out[i] = 'R';
  }
  return out;
}

void Coloring::set(Vertex v, Label value) {
  if (value != kRed && value != kBlue) throw ValidationError("labels must be +1 or -1");
  if (labels_[v] == value) return;
  red_count_ += value == kRed ? 1 : -1;
  labels_[v] = value;
}

Coloring Coloring::negated() const {
  Coloring out = *this;
  for (Label& l : out.labels_) l = static_cast<Label>(-l);
  out.red_count_ = size() - red_count_;
  return out;
}

std::span<const Vertex> sample_prefix(std::vector<Vertex>& pool, std::size_t k,
                                      std::uint64_t seed) {
  k = std::min(k, pool.size());
  Rng rng = make_rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  return {pool.data(), k};
}

namespace {

Coloring with_red_subset(std::uint32_t n, std::uint32_t red, std::uint64_t seed) {
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  Coloring c(n, kBlue);
  for (Vertex v : sample_prefix(pool, red, seed)) c.set(v, kRed);
  return c;
}

}  // namespace

Coloring fixed_advantage(std::uint32_t n, std::int64_t delta, std::uint64_t seed) {
  const std::int64_t red = static_cast<std::int64_t>((n + 1) / 2) + delta;
  if (delta < 0 || red > static_cast<std::int64_t>(n)) {
    throw ParameterError("fixed advantage: need 0 <= delta and ceil(n/2 + delta) <= n (n = " +
                         std::to_string(n) + ", delta = " + std::to_string(delta) + ")");
  }
  return with_red_subset(n, static_cast<std::uint32_t>(red), seed);
}

Coloring random_half(std::uint32_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Label> labels(n);
  std::uint64_t bits = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i % 64 == 0) bits = rng();
    labels[i] = (bits & 1) ? kRed : kBlue;
    bits >>= 1;
  }
  return Coloring(std::move(labels));
}

DefectorScenario balanced_with_defectors(std::uint32_t n, std::int64_t delta,
                                         std::uint64_t seed) {
  const std::int64_t blue = n / 2;
  if (delta < 0 || delta > blue) {
    throw ParameterError("defectors: need 0 <= delta <= |B_hat| = " + std::to_string(blue) +
                         ", got " + std::to_string(delta));
  }
  DefectorScenario s;
  s.hat_coloring = with_red_subset(n, (n + 1) / 2, mix_seed(seed, 0));

  std::vector<Vertex> hat_blue;
  hat_blue.reserve(static_cast<std::size_t>(blue));
  for (Vertex v = 0; v < n; ++v) {
    if (!s.hat_coloring.is_red(v)) hat_blue.push_back(v);
  }
  auto swing = sample_prefix(hat_blue, static_cast<std::size_t>(delta), mix_seed(seed, 1));
  s.swing_set.assign(swing.begin(), swing.end());
  std::sort(s.swing_set.begin(), s.swing_set.end());

  s.coloring = s.hat_coloring;
  for (Vertex v : s.swing_set) s.coloring.set(v, kRed);
  return s;
}

}  // namespace majority
