#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "majority/graph.hpp"

namespace majority {

using Label = std::int8_t;
inline constexpr Label kRed = 1;
inline constexpr Label kBlue = -1;

// One day's state: a +1 (Red) / -1 (Blue) label per vertex.
class Coloring {
 public:
  Coloring() = default;
  // All vertices set to `fill`.
  Coloring(std::uint32_t n, Label fill);
  // Throws ValidationError if any label is not +1 or -1.
  explicit Coloring(std::vector<Label> labels);

  // Parses the dump format: one character per vertex from {R, B}.
  static Coloring from_string(std::string_view text);
  std::string to_string() const;

  std::uint32_t size() const { return static_cast<std::uint32_t>(labels_.size()); }
  Label operator[](Vertex v) const { return labels_[v]; }
  bool is_red(Vertex v) const { return labels_[v] == kRed; }
  std::span<const Label> labels() const { return labels_; }

  std::uint32_t red_count() const { return red_count_; }
  std::uint32_t blue_count() const { return size() - red_count_; }

  void set(Vertex v, Label value);
  Coloring negated() const;

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<Label> labels_;
  std::uint32_t red_count_ = 0;
};

// Balanced coloring with Delta Blue vertices flipped to Red: hat_coloring is
// the balanced one (ceil(n/2) Red), swing_set the flipped vertices (sorted),
// coloring the result.
struct DefectorScenario {
  Coloring hat_coloring;
  std::vector<Vertex> swing_set;
  Coloring coloring;
};

// ceil(n/2 + delta) Red vertices, chosen uniformly. Throws ParameterError if
// delta < 0 or ceil(n/2) + delta > n.
Coloring fixed_advantage(std::uint32_t n, std::int64_t delta, std::uint64_t seed);

// Independent fair labels.
Coloring random_half(std::uint32_t n, std::uint64_t seed);

// Throws ParameterError if delta < 0 or delta > floor(n/2).
DefectorScenario balanced_with_defectors(std::uint32_t n, std::int64_t delta,
                                         std::uint64_t seed);

// First k entries of a uniformly random permutation of `pool` (partial
// Fisher-Yates; reorders `pool` in place).
std::span<const Vertex> sample_prefix(std::vector<Vertex>& pool, std::size_t k,
                                      std::uint64_t seed);

}  // namespace majority
