#include <gtest/gtest.h>

#include "qwalk/error.hpp"
#include "qwalk/step_set.hpp"

using namespace qwalk;

TEST(StepSet, SimpleWalkHasFourSteps) {
  const StepSet s = StepSet::from_steps({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  EXPECT_EQ(s.size(), 4);
  EXPECT_EQ(s, *preset("simple"));
  EXPECT_EQ(s.to_string(), "{(-1,0),(0,-1),(0,1),(1,0)}");
}

TEST(StepSet, SingletonAndDuplicates) {
  EXPECT_EQ(StepSet::from_steps({{1, 0}}).size(), 1);
  EXPECT_EQ(StepSet::from_steps({{1, 0}, {1, 0}}).size(), 1);
}

TEST(StepSet, RejectsOriginAndLongSteps) {
  try {
    StepSet::from_steps({{0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidStep);
  }
  EXPECT_THROW(StepSet::from_steps({{2, 0}}), Error);
  try {
    StepSet::from_steps({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyStepSet);
  }
}

TEST(StepSet, DriftExamples) {
  const DriftData simple = drift(*preset("simple"));
  EXPECT_EQ(simple.mx, 0);
  EXPECT_EQ(simple.my, 0);
  EXPECT_EQ(simple.covariance, 0);
  const DriftData k = drift(*preset("kreweras"));
  EXPECT_EQ(k.mx, 0);
  EXPECT_EQ(k.my, 0);
  EXPECT_EQ(k.covariance, 1);
  const DriftData ne = drift(StepSet::from_steps({{1, 0}, {0, 1}}));
  EXPECT_EQ(ne.mx, 1);
  EXPECT_EQ(ne.my, 1);
  EXPECT_EQ(ne.covariance, -1);
}

TEST(StepSet, DriftIsAdditiveOverDisjointUnions) {
  for (int a = 1; a < 256; a += 7) {
    for (int b = 1; b < 256; b += 11) {
      if ((a & b) != 0) continue;
      const DriftData da = drift(StepSet(static_cast<std::uint8_t>(a)));
      const DriftData db = drift(StepSet(static_cast<std::uint8_t>(b)));
      const DriftData du = drift(StepSet(static_cast<std::uint8_t>(a | b)));
      EXPECT_EQ(du.mx, da.mx + db.mx);
      EXPECT_EQ(du.my, da.my + db.my);
    }
  }
}

TEST(StepSet, Singularity) {
  EXPECT_FALSE(is_singular(*preset("simple")));
  EXPECT_TRUE(is_singular(StepSet::from_steps({{1, 0}, {0, 1}, {1, 1}})));
  EXPECT_FALSE(is_singular(StepSet::from_steps({{-1, -1}})));
  for (const StepSet& s : all_step_sets()) {
    if (is_singular(s)) {
      EXPECT_EQ(s.delta(-1, -1), 0);
      EXPECT_FALSE(s.has_interior_origin());
    }
  }
}

TEST(StepSet, SymmetryClass) {
  const SymmetryClass simple = symmetry_class(*preset("simple"));
  EXPECT_EQ(simple.canonical, *preset("simple"));
  EXPECT_EQ(simple.transform, SymmetryTransform::Identity);
  EXPECT_EQ(symmetry_class(StepSet::from_steps({{1, 0}})).canonical,
            symmetry_class(StepSet::from_steps({{0, 1}})).canonical);
  const StepSet gb = *preset("gouyou-beauchamps");
  const auto a = gb.steps();
  const auto b = gb.mirrored().steps();
  const StepSet expected = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())
                               ? gb.mirrored()
                               : gb;
  EXPECT_EQ(symmetry_class(gb).canonical, expected);
}

TEST(StepSet, SymmetryClassIsIdempotentAndTransformIsExact) {
  for (const StepSet& s : all_step_sets()) {
    const SymmetryClass c = symmetry_class(s);
    EXPECT_EQ(apply(c.transform, s), c.canonical);
    EXPECT_EQ(symmetry_class(c.canonical).canonical, c.canonical);
    EXPECT_EQ(s.mirrored().mirrored(), s);
  }
}

TEST(StepSet, InteriorOrigin) {
  EXPECT_TRUE(preset("simple")->has_interior_origin());
  EXPECT_TRUE(preset("kreweras")->has_interior_origin());
  EXPECT_FALSE(StepSet::from_steps({{1, 0}, {-1, 0}}).has_interior_origin());
  EXPECT_FALSE(StepSet::from_steps({{-1, 1}, {1, -1}, {1, 1}}).has_interior_origin());
}

TEST(StepSet, CensusSize) {
  EXPECT_EQ(all_step_sets().size(), 255u);
  EXPECT_EQ(preset_names().size(), 4u);
  EXPECT_FALSE(preset("unknown").has_value());
}
