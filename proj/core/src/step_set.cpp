#include "qwalk/step_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

// Mask bit order: (-1,-1) (-1,0) (-1,1) (0,-1) (0,1) (1,-1) (1,0) (1,1),
// which is lexicographic order of (i, j).
constexpr std::array<Step, 8> kAllSteps = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

bool valid_offset(int i, int j) {
  return i >= -1 && i <= 1 && j >= -1 && j <= 1 && !(i == 0 && j == 0);
}

}  // namespace

int StepSet::index_of(int i, int j) {
  if (!valid_offset(i, j)) {
    throw Error(ErrorKind::InvalidStep,
                "step (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is not a small step");
  }
  int k = (i + 1) * 3 + (j + 1);
  return k > 4 ? k - 1 : k;
}

StepSet::StepSet(std::uint8_t mask) : mask_(mask) {
  if (mask_ == 0) throw Error(ErrorKind::EmptyStepSet, "step set is empty");
}

StepSet StepSet::from_steps(const std::vector<std::pair<int, int>>& steps) {
  std::uint8_t mask = 0;
  for (const auto& [i, j] : steps) mask |= static_cast<std::uint8_t>(1u << index_of(i, j));
  return StepSet(mask);
}

int StepSet::delta(int i, int j) const noexcept {
  if (!valid_offset(i, j)) return 0;
  int k = (i + 1) * 3 + (j + 1);
  if (k > 4) --k;
  return (mask_ >> k) & 1;
}

int StepSet::size() const noexcept { return std::popcount(mask_); }

std::vector<Step> StepSet::steps() const {
  std::vector<Step> out;
  for (int k = 0; k < 8; ++k) {
    if ((mask_ >> k) & 1) out.push_back(kAllSteps[k]);
  }
  return out;
}

StepSet StepSet::mirrored() const {
  std::uint8_t m = 0;
  for (const Step& s : steps()) m |= static_cast<std::uint8_t>(1u << index_of(s.j, s.i));
  return StepSet(m);
}

bool StepSet::has_interior_origin() const noexcept {
  // The origin is outside the open hull iff some nonzero direction e has
  // s.e <= 0 for every step; such an e can be rotated until it is normal to a step.
  const auto all = steps();
  for (const Step& s : all) {
    for (int sign : {1, -1}) {
      const int ex = -s.j * sign;
      const int ey = s.i * sign;
      bool all_nonpositive = true;
      for (const Step& t : all) {
        if (t.i * ex + t.j * ey > 0) {
          all_nonpositive = false;
          break;
        }
      }
      if (all_nonpositive) return false;
    }
  }
  return true;
}

std::string StepSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const Step& s : steps()) {
    if (!first) os << ',';
    first = false;
    os << '(' << s.i << ',' << s.j << ')';
  }
  os << '}';
  return os.str();
}

StepSet parse_step_set(const std::vector<std::pair<int, int>>& pairs) {
  return StepSet::from_steps(pairs);
}

DriftData drift(const StepSet& s) {
  DriftData d;
  int sum_ij = 0;
  for (const Step& st : s.steps()) {
    d.mx += st.i;
    d.my += st.j;
    sum_ij += st.i * st.j;
  }
  d.covariance = sum_ij - d.mx * d.my;
  d.cardinality = s.size();
  return d;
}

bool is_singular(const StepSet& s) {
  return !s.contains(-1, 0) && !s.contains(-1, -1) && !s.contains(0, -1);
}

StepSet apply(SymmetryTransform t, const StepSet& s) {
  return t == SymmetryTransform::Identity ? s : s.mirrored();
}

SymmetryClass symmetry_class(const StepSet& s) {
  const StepSet m = s.mirrored();
  const auto a = s.steps();
  const auto b = m.steps();
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
    return {m, SymmetryTransform::DiagonalReflection};
  }
  return {s, SymmetryTransform::Identity};
}

std::optional<StepSet> preset(std::string_view name) {
  if (name == "simple") return StepSet::from_steps({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  if (name == "kreweras") return StepSet::from_steps({{-1, 0}, {0, -1}, {1, 1}});
  if (name == "gessel") return StepSet::from_steps({{1, 0}, {-1, 0}, {1, 1}, {-1, -1}});
  if (name == "gouyou-beauchamps") {
    return StepSet::from_steps({{1, 0}, {-1, 0}, {-1, 1}, {1, -1}});
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"simple", "kreweras", "gessel", "gouyou-beauchamps"};
}

std::vector<StepSet> all_step_sets() {
  std::vector<StepSet> out;
  out.reserve(255);
  for (int m = 1; m < 256; ++m) out.emplace_back(static_cast<std::uint8_t>(m));
  return out;
}

}  // namespace qwalk
