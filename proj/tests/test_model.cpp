#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qrabi/model.hpp"

using namespace qrabi;
using Catch::Matchers::WithinAbs;

namespace {
ModelParams two_mode(double delta, double g) { return {delta, g, ModelFamily::TwoMode}; }
ModelParams two_photon(double delta, double g) { return {delta, g, ModelFamily::TwoPhoton}; }
}  // namespace

TEST_CASE("Bogoliubov quantities") {
  SECTION("decoupled point is the identity transformation") {
    auto b = bogoliubov(two_mode(0.35, 0.0));
    REQUIRE(b.beta == 1.0);
    REQUIRE(b.u == 1.0);
    REQUIRE(b.v == 0.0);
    REQUIRE(b.ratio == 0.0);
  }
  SECTION("direct substitution") {
    REQUIRE_THAT(bogoliubov(two_mode(0.35, 0.5)).beta, WithinAbs(std::sqrt(0.75), 1e-15));
    REQUIRE_THAT(bogoliubov(two_mode(0.35, 0.95)).beta,
                 WithinAbs(std::sqrt(1.0 - 0.95 * 0.95), 1e-15));
    REQUIRE_THAT(bogoliubov(two_mode(0.35, 0.95)).beta, WithinAbs(0.3122499, 1e-7));
    REQUIRE_THAT(bogoliubov(two_photon(0.35, 0.2)).beta,
                 WithinAbs(std::sqrt(1.0 - 4.0 * 0.04), 1e-15));
  }
  SECTION("u^2 - v^2 = 1 on a dense coupling grid") {
    for (int i = 0; i <= 400; ++i) {
      double g = 0.999 * i / 400.0;
      auto b = bogoliubov(two_mode(0.1, g));
      REQUIRE_THAT(b.u * b.u - b.v * b.v, WithinAbs(1.0, 1e-12));
      auto b2 = bogoliubov(two_photon(0.1, 0.5 * g));
      REQUIRE_THAT(b2.u * b2.u - b2.v * b2.v, WithinAbs(1.0, 1e-12));
    }
  }
  SECTION("ratio matches v/u and increases from 0 toward 1") {
    double prev = -1.0;
    for (int i = 1; i <= 200; ++i) {
      double g = 0.9999 * i / 200.0;
      auto b = bogoliubov(two_mode(0.1, g));
      REQUIRE_THAT(b.ratio, WithinAbs(b.v / b.u, 1e-12));
      REQUIRE(b.ratio > prev);
      REQUIRE(b.ratio < 1.0);
      prev = b.ratio;
    }
    REQUIRE(bogoliubov(two_mode(0.1, 1e-9)).ratio < 1e-8);
    REQUIRE(bogoliubov(two_mode(0.1, 0.9999999)).ratio > 0.999);
  }
  SECTION("coupling at or past the collapse point is refused") {
    REQUIRE_THROWS_AS(bogoliubov(two_mode(0.35, 1.0)), CouplingOutOfRange);
    REQUIRE_THROWS_AS(bogoliubov(two_mode(0.35, 1.2)), CouplingOutOfRange);
    REQUIRE_THROWS_AS(bogoliubov(two_photon(0.35, 0.5)), CouplingOutOfRange);
    REQUIRE_THROWS_AS(bogoliubov(two_mode(0.35, -0.1)), CouplingOutOfRange);
  }
}

TEST_CASE("x <-> E maps") {
  BargmannQ half = BargmannQ::from_value(0.5);

  SECTION("arithmetic spot values") {
    REQUIRE_THAT(energy_from_x(two_mode(0.35, 0.5), half, 0.0),
                 WithinAbs(std::sqrt(0.75) - 1.0, 1e-15));
    REQUIRE_THAT(energy_from_x(two_mode(0.35, 0.5), half, 0.0), WithinAbs(-0.1339746, 1e-7));
    // decoupled limit: E(x=-delta/2) = 2q - 1 - delta
    REQUIRE_THAT(energy_from_x(two_mode(0.35, 0.0), half, -0.175), WithinAbs(-0.35, 1e-15));
    REQUIRE_THAT(energy_from_x(two_mode(0.35, 0.95), BargmannQ::from_value(1.0), 3.0),
                 WithinAbs(8.0 * std::sqrt(1.0 - 0.9025) - 1.0, 1e-15));
    REQUIRE_THAT(energy_from_x(two_mode(0.35, 0.95), BargmannQ::from_value(1.0), 3.0),
                 WithinAbs(1.4979992, 1e-7));
  }
  SECTION("pole positions map to x = 0") {
    BargmannQ two = BargmannQ::from_value(2.0);
    double beta = squeeze_beta(two_mode(0.35, 0.63));
    REQUIRE_THAT(x_from_energy(two_mode(0.35, 0.63), two, 2.0 * beta * 2.0 - 1.0),
                 WithinAbs(0.0, 1e-12));
    BargmannQ quarter = BargmannQ::from_value(0.25);
    double beta2 = squeeze_beta(two_photon(0.35, 0.2));
    REQUIRE_THAT(
        x_from_energy(two_photon(0.35, 0.2), quarter, -0.5 + 2.0 * beta2 * 0.25),
        WithinAbs(0.0, 1e-12));
  }
  SECTION("round trip is the identity") {
    for (double g : {1e-6, 0.3, 0.7, 0.95}) {
      for (double x : {-3.2, -0.5, 0.0, 0.17, 2.9, 11.0}) {
        double e = energy_from_x(two_mode(0.35, g), half, x);
        REQUIRE_THAT(x_from_energy(two_mode(0.35, g), half, e), WithinAbs(x, 1e-12));
      }
    }
    BargmannQ q34 = BargmannQ::from_value(0.75);
    for (double x : {-1.0, 0.4, 6.3}) {
      double e = energy_from_x(two_photon(0.2, 0.3), q34, x);
      REQUIRE_THAT(x_from_energy(two_photon(0.2, 0.3), q34, e), WithinAbs(x, 1e-12));
    }
  }
}

TEST_CASE("Bargmann index representation") {
  SECTION("quarter-exact storage") {
    REQUIRE(BargmannQ::from_value(0.5).quarters == 2);
    REQUIRE(BargmannQ::from_value(0.25).quarters == 1);
    REQUIRE(BargmannQ::from_value(0.75).quarters == 3);
    REQUIRE(BargmannQ::from_value(1.5).quarters == 6);
    REQUIRE(BargmannQ::from_value(2.0).value() == 2.0);
  }
  SECTION("off-grid values rejected") {
    REQUIRE_THROWS_AS(BargmannQ::from_value(0.3), InvalidSector);
    REQUIRE_THROWS_AS(BargmannQ::from_value(0.0), InvalidSector);
    REQUIRE_THROWS_AS(BargmannQ::from_value(-0.5), InvalidSector);
  }
  SECTION("family grids") {
    REQUIRE_NOTHROW(validate(ModelFamily::TwoMode, BargmannQ::from_value(1.5)));
    REQUIRE_THROWS_AS(validate(ModelFamily::TwoMode, BargmannQ::from_value(0.25)),
                      InvalidSector);
    REQUIRE_NOTHROW(validate(ModelFamily::TwoPhoton, BargmannQ::from_value(0.75)));
    REQUIRE_THROWS_AS(validate(ModelFamily::TwoPhoton, BargmannQ::from_value(1.0)),
                      InvalidSector);
  }
}
