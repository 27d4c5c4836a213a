#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rpst {

class RandomStream;

// How many central ranks are zeroed: either a proportion q in [0, 1), giving
// Q = floor(n q), or an explicit count Q.
class ModificationSpec {
 public:
  static ModificationSpec from_proportion(double q);
  static ModificationSpec from_count(std::size_t Q);

  // Q for a combined sample of size n. Throws if an explicit Q exceeds n.
  std::size_t count(std::size_t n) const;

  bool is_proportion() const noexcept { return is_proportion_; }
  double proportion() const noexcept { return q_; }

 private:
  ModificationSpec(bool is_proportion, double q, std::size_t Q)
      : is_proportion_(is_proportion), q_(q), Q_(Q) {}

  bool is_proportion_;
  double q_;
  std::size_t Q_;
};

// Order in which the extremes are visited when ranking from the outside in.
//   single: lowest, highest, 2nd lowest, 2nd highest, ...
//   paired: lowest, then the two highest, then the next two lowest, ...
enum class Alternation { single, paired };

// Sorted positions (0 = smallest) in the order they receive ranks.
std::vector<std::size_t> extreme_inward_order(std::size_t n, Alternation alternation);

// Rank value for each sorted position: n-Q, n-Q-1, ..., 1 handed out along
// the extreme-inward order; the Q central positions get 0.
std::vector<std::size_t> center_outward_rank_values(
    std::size_t n, std::size_t Q, Alternation alternation = Alternation::single);

struct RankOptions {
  Alternation alternation = Alternation::single;
  // Half-width of the uniform tie-breaking jitter; 0 disables jittering.
  double jitter_scale = 0.0;
  RandomStream* jitter_stream = nullptr;
};

struct RankedSample {
  std::vector<double> values;            // combined, group 1 first, input order
  std::vector<std::uint8_t> in_group1;   // 1 for group-1 observations
  std::vector<std::size_t> ranks;        // modified centre-outward rank
  std::size_t n = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t Q = 0;
};

// Ranks the combined two-sample data. Ties are an error unless jitter is
// configured, in which case every value receives U(-s, s) noise before
// sorting; s must be below half the smallest gap between distinct values.
RankedSample rank_data(std::span<const double> group1, std::span<const double> group2,
                       const ModificationSpec& mod, const RankOptions& options = {});

struct Pair {
  double x = 0.0;
  double y = 0.0;
};

struct SignedRankSample {
  std::vector<double> abs_diffs;           // |y - x|
  std::vector<int> signs;                  // sign(y - x), never 0
  std::vector<std::size_t> ranks;          // 1..n, ascending in abs_diffs
  std::vector<std::size_t> modified_ranks; // max(rank - Q, 0)
  std::size_t n = 0;
  std::size_t Q = 0;
};

// Signed ranks for paired data. Zero or tied |differences| are errors unless
// jitter is configured; jitter is added to the differences y - x and must be
// below half the smallest gap among {0} and the distinct |differences|.
SignedRankSample signed_rank_data(std::span<const Pair> pairs, const ModificationSpec& mod,
                                  const RankOptions& options = {});

}  // namespace rpst
