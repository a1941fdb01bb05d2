#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwalk {

/// A small step (i, j) with i, j in {-1, 0, 1}, not both zero.
struct Step {
  int i = 0;
  int j = 0;

  friend constexpr bool operator==(const Step&, const Step&) = default;
  friend constexpr auto operator<=>(const Step&, const Step&) = default;
};

/// Nonempty subset of the eight nearest-neighbour steps, stored as an 8-bit mask.
class StepSet {
 public:
  /// Throws EmptyStepSet for mask 0.
  explicit StepSet(std::uint8_t mask);

  /// Builds from a step list; duplicates collapse. Throws InvalidStep or EmptyStepSet.
  static StepSet from_steps(const std::vector<std::pair<int, int>>& steps);

  std::uint8_t mask() const noexcept { return mask_; }

  /// Indicator delta_{i,j}; zero for (0,0) and for out-of-range offsets.
  int delta(int i, int j) const noexcept;
  bool contains(int i, int j) const noexcept { return delta(i, j) != 0; }

  /// Number of steps |S|.
  int size() const noexcept;

  /// Steps in lexicographic (i, j) order.
  std::vector<Step> steps() const;

  /// Diagonal reflection (i, j) -> (j, i).
  StepSet mirrored() const;

  /// True when the origin lies in the interior of the convex hull of the steps,
  /// i.e. the walk can move in every half-plane direction.
  bool has_interior_origin() const noexcept;

  std::string to_string() const;

  friend bool operator==(const StepSet&, const StepSet&) = default;

  /// Index in [0, 8) of a valid step.
  static int index_of(int i, int j);

 private:
  std::uint8_t mask_;
};

struct DriftData {
  int mx = 0;          ///< sum of i over steps
  int my = 0;          ///< sum of j over steps
  int covariance = 0;  ///< sum of i*j minus mx*my
  int cardinality = 0;
};

/// Parses a list of integer pairs into a step set. Same contract as StepSet::from_steps.
StepSet parse_step_set(const std::vector<std::pair<int, int>>& pairs);

DriftData drift(const StepSet& s);

/// No West, South-West or South step.
bool is_singular(const StepSet& s);

enum class SymmetryTransform { Identity, DiagonalReflection };

struct SymmetryClass {
  StepSet canonical;
  SymmetryTransform transform;
};

/// Canonical representative under the diagonal reflection: the lexicographic
/// minimum of the sorted step lists of s and its mirror.
SymmetryClass symmetry_class(const StepSet& s);

/// Applies a recorded transform to a step set.
StepSet apply(SymmetryTransform t, const StepSet& s);

/// Named presets: "simple", "kreweras", "gessel", "gouyou-beauchamps".
std::optional<StepSet> preset(std::string_view name);
std::vector<std::string> preset_names();

/// All 255 nonempty step sets, in increasing mask order.
std::vector<StepSet> all_step_sets();

}  // namespace qwalk
