#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lorentzfd/quadric.hpp"
#include "lorentzfd/reduction.hpp"
#include "lorentzfd/series.hpp"

using namespace lorentzfd;

namespace {

CoverElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.7, 0.7), t(-6.0, 6.0);
  return rotation_lift({u(rng), u(rng)}, t(rng)) * rotation_lift({u(rng), u(rng)}, t(rng));
}

ConePoint random_cone_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  const auto g = random_element(rng);
  const double c = scale(rng);
  return {c * g.z, c * g.w, g.phi};
}

}  // namespace

TEST(PairingForm, Examples) {
  EXPECT_DOUBLE_EQ(pairing_form(CoverElement::identity(), CoverElement::identity()), -1.0);
  for (double s : {-3.0, 0.0, 0.7}) {
    EXPECT_DOUBLE_EQ(pairing_form(ConePoint{0.0, Complex(1, s), 0.0}, ConePoint{}), -1.0);
  }
}

TEST(PairingForm, BiInvariant) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const auto g = random_element(rng);
    const auto a = random_cone_point(rng), b = random_cone_point(rng);
    const double ref = pairing_form(a, b);
    ASSERT_NEAR(pairing_form(g * a, g * b), ref, 1e-9 * (1 + std::abs(ref)));
    ASSERT_NEAR(pairing_form(a * g, b * g), ref, 1e-9 * (1 + std::abs(ref)));
  }
}

TEST(Membership, Examples) {
  const HalfSpaceConstraint ie{CoverElement::identity(), Side::I};
  const HalfSpaceConstraint he{CoverElement::identity(), Side::H};
  EXPECT_TRUE(membership(ie, {0.0, 2.0, 0.0}));
  EXPECT_FALSE(membership(ie, {0.0, 2.0, 2 * kPi}));
  EXPECT_TRUE(membership(he, {0.0, 2.0, 2 * kPi}));
  EXPECT_TRUE(membership(he, {0.0, -2.0, kPi}));
  EXPECT_FALSE(membership(he, {0.0, 2.0, 0.0}));
  EXPECT_TRUE(membership({CoverElement::identity(), Side::E}, {0.3, Complex(1, 0.2), 0.2}, 1e-12));
}

TEST(Membership, LeftTranslationCovariant) {
  std::mt19937_64 rng(29);
  int disagreements = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto g = random_element(rng), h = random_element(rng);
    const auto p = random_cone_point(rng);
    for (Side side : {Side::I, Side::H}) {
      const HalfSpaceConstraint c{g, side};
      const double margin = std::abs((g.inverse() * p).w.real() - 1.0);
      if (margin < 1e-9) continue;
      if (membership(c, p) != membership({h * g, side}, h * p)) ++disagreements;
    }
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Membership, SidesPartitionTheCone) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_element(rng);
    const auto p = random_cone_point(rng);
    const bool in_i = membership({g, Side::I}, p), in_h = membership({g, Side::H}, p);
    EXPECT_TRUE(in_i || in_h);
  }
}

TEST(Slab, Membership) {
  const auto lift = series_lift(Series::E, 2);
  const auto& cfg = lift.config;
  EXPECT_EQ(cfg.p_lcm, 15);
  EXPECT_NEAR(slab_half_width(2, 15), 0.2125565617, 1e-10);
  EXPECT_TRUE(slab_membership({0.0, 1.0, 0.0}, cfg));
  const Complex w1(1, 0.2), w2(1, 0.25);
  EXPECT_TRUE(slab_membership({0.0, w1, std::arg(w1)}, cfg));
  EXPECT_FALSE(slab_membership({0.0, w2, std::arg(w2)}, cfg));
  EXPECT_FALSE(slab_membership({0.0, w1, std::arg(w1) + 2 * kPi}, cfg));
}

TEST(Chart, RoundTrip) {
  const Vec3 x{0.3, -0.4, 0.1};
  const Vec3 y = to_chart(from_chart(x));
  EXPECT_LT(distance(x, y), 1e-15);
}

TEST(Cylinders, Bounds) {
  const auto lift = series_lift(Series::E, 2);
  const auto b0 = cylinder_bounds(0.0, lift.config);
  EXPECT_DOUBLE_EQ(b0.r_in, 1.0);
  EXPECT_NEAR(b0.r_out, 1.022340595, 1e-9);
  const auto b = cylinder_bounds(lift.group.d, lift.config);
  EXPECT_NEAR(b.r_in, 0.6180339887, 1e-9);
  EXPECT_NEAR(b.r_out, 0.6318412357, 1e-9);
}

TEST(Prism, BaseStabilizer) {
  const auto lift = series_lift(Series::E, 2);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double t = slab_half_width(2, 15);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 x{u(rng), u(rng), t * u(rng)};
    const ConePoint p = from_chart(x);
    if (std::abs(p.w) <= 1.0) {
      EXPECT_TRUE(prism_membership(0.0, CoverElement::identity(), p, lift.config).inside);
    }
  }
}

TEST(Prism, SandwichedByCylinders) {
  for (Series s : {Series::E, Series::Z}) {
    const auto lift = series_lift(s, 2);
    const auto& cfg = lift.config;
    const double t = slab_half_width(cfg.k, cfg.p_lcm);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int inner = 0, outer = 0;
    for (const auto& h : corona_lifts(lift)) {
      const Complex x = mobius_apply(h.base(), 0.0);
      const auto b = cylinder_bounds(x, cfg);
      for (int i = 0; i < 400; ++i) {
        const Vec3 c{u(rng), u(rng), t * u(rng)};
        if (c.x * c.x + c.y * c.y >= 1.0 + c.z * c.z) continue;
        const ConePoint p = from_chart(c);
        const double rho = std::abs(p.w - std::conj(x) * p.z);
        const bool in = prism_membership(x, h, p, cfg).inside;
        if (rho <= b.r_in - 1e-9) {
          ++inner;
          EXPECT_TRUE(in);
        }
        if (rho > b.r_out + 1e-9) {
          ++outer;
          EXPECT_FALSE(in);
        }
      }
    }
    EXPECT_GT(inner, 0);
    EXPECT_GT(outer, 0);
  }
}

TEST(Prism, RejectsWrongLift) {
  const auto lift = series_lift(Series::E, 2);
  EXPECT_THROW(prism_membership(0.5, CoverElement::identity(), ConePoint{}, lift.config), Error);
}
