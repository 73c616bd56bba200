#include <doctest.h>

#include <cmath>
#include <cstring>

#include "polyedge/errors.hpp"
#include "polyedge/evaluation.hpp"

using namespace polyedge;

namespace {

EdgeMap mask_of(const Mask& m) { return EdgeMap{m, 0.5}; }

}  // namespace

TEST_CASE("xoshiro256** stream matches reference values") {
  // Reference from an independent transcription of splitmix64 seeding and
  // xoshiro256** 1.0.
  Xoshiro256StarStar a(0);
  CHECK(a.next() == 0x99ec5f36cb75f2b4ULL);
  CHECK(a.next() == 0xbf6e1f784956452aULL);
  CHECK(a.next() == 0x1a5f849d4933e6e0ULL);
  Xoshiro256StarStar b(12345);
  CHECK(b.next() == 0xbe6a36374160d49bULL);
  CHECK(b.next() == 0x214aaa0637a688c6ULL);
  CHECK(b.next() == 0xf69d16de9954d388ULL);
}

TEST_CASE("gaussian noise") {
  const Image img = Image::Constant(4, 4, 100.0);
  CHECK(add_gaussian_noise(img, {0.0, 3}) == img);

  const Image one = add_gaussian_noise(Image::Zero(1, 2), {1.0, 7});
  CHECK(one(0, 0) == doctest::Approx(-0.2790239910251981).epsilon(1e-14));
  CHECK(one(0, 1) == doctest::Approx(1.5277231859624536).epsilon(1e-14));

  const Image base = Image::Constant(256, 256, 128.0);
  const Image n20 = add_gaussian_noise(base, {20.0, 11});
  CHECK(std::abs((n20 - base).mean()) < 20.0 * 3.0 / 256.0);

  const Image n30 = add_gaussian_noise(base, {30.0, 12});
  const Eigen::ArrayXXd d = (n30 - base).array();
  const double sd = std::sqrt((d - d.mean()).square().sum() / static_cast<double>(d.size() - 1));
  CHECK(std::abs(sd - 30.0) < 0.02 * 30.0);

  const Image again = add_gaussian_noise(base, {30.0, 12});
  CHECK(std::memcmp(again.data(), n30.data(), sizeof(double) * static_cast<std::size_t>(n30.size())) == 0);
  CHECK(add_gaussian_noise(base, {30.0, 13}) != n30);

  const Image odd = add_gaussian_noise(Image::Zero(3, 3), {1.0, 1});
  CHECK(odd.allFinite());
  CHECK_THROWS_AS(add_gaussian_noise(img, {-1.0, 0}), ConfigError);
}

TEST_CASE("dilation") {
  Mask m = Mask::Zero(5, 5);
  m(2, 2) = 1;
  CHECK(dilate(m, 0) == m);
  CHECK(dilate(m, 1).cast<int>().sum() == 9);
  CHECK(dilate(m, 2).cast<int>().sum() == 25);
  m.setZero();
  m(0, 4) = 1;
  CHECK(dilate(m, 1).cast<int>().sum() == 4);
}

TEST_CASE("edge scores") {
  Mask truth = Mask::Zero(10, 10);
  truth.col(4).setOnes();
  const EdgeScore same = score_edges(mask_of(truth), mask_of(truth), 0);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);

  const EdgeScore none = score_edges(mask_of(Mask::Zero(10, 10)), mask_of(truth), 1);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  Mask shifted = Mask::Zero(10, 10);
  shifted.col(5).setOnes();
  CHECK(score_edges(mask_of(shifted), mask_of(truth), 1).f1 == 1.0);
  CHECK(score_edges(mask_of(shifted), mask_of(truth), 0).f1 == 0.0);

  // Half the prediction is spurious: precision 1/2, recall 1.
  Mask extra = truth;
  extra.col(8).setOnes();
  const EdgeScore half = score_edges(mask_of(extra), mask_of(truth), 1);
  CHECK(half.precision == 0.5);
  CHECK(half.recall == 1.0);
  CHECK(half.f1 == doctest::Approx(2.0 / 3.0));

  const EdgeScore both_empty = score_edges(mask_of(Mask::Zero(3, 3)), mask_of(Mask::Zero(3, 3)), 1);
  CHECK(both_empty.f1 == 1.0);
  CHECK_THROWS_AS(score_edges(mask_of(Mask::Zero(3, 3)), mask_of(truth), 1), ShapeError);
  for (int tol : {0, 1, 2, 5}) CHECK(score_edges(mask_of(truth), mask_of(truth), tol).f1 == 1.0);
}

TEST_CASE("threshold grids") {
  const auto g = parse_threshold_grid("0:0.01:1");
  REQUIRE(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g[15] == 0.15);
  CHECK(g.back() == 1.0);
  CHECK(parse_threshold_grid("0.2, 0.4,0.6").size() == 3);
  CHECK(parse_threshold_grid("0.5").size() == 1);
  CHECK_THROWS_AS(parse_threshold_grid(""), ConfigError);
  CHECK_THROWS_AS(parse_threshold_grid("0:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_threshold_grid("a,b"), ConfigError);
  CHECK_THROWS_AS(parse_threshold_grid("0:0.5:2"), ConfigError);
  CHECK_THROWS_AS(parse_threshold_grid("1:0.1"), ConfigError);
}

TEST_CASE("threshold sweeps") {
  Image v = Image::Zero(6, 6);
  v(1, 1) = 1.0;
  v(3, 4) = 0.4;
  const GradMap g{v, true};
  const EdgeMap truth = threshold_map(g, 1.0);
  const SweepResult two = sweep_thresholds(g, truth, {0.0, 1.0}, 0);
  REQUIRE(two.points.size() == 2);
  CHECK(two.points[0].edge_pixels == 36);
  CHECK(two.points[1].edge_pixels == 1);
  CHECK(two.best().threshold == 1.0);
  CHECK(two.best().score.f1 == 1.0);
  CHECK_THROWS_AS(sweep_thresholds(g, truth, {}, 1), ConfigError);

  Image ramp(20, 20);
  for (Eigen::Index i = 0; i < ramp.size(); ++i) ramp.data()[i] = std::fmod(i * 0.618034, 1.0);
  const GradMap rg = normalize(ramp);
  const EdgeMap self = threshold_map(rg, 0.15);
  const SweepResult s = sweep_thresholds(rg, self, parse_threshold_grid("0:0.01:1"), 1);
  CHECK(s.points[15].threshold == 0.15);
  CHECK(s.points[15].score.f1 == 1.0);
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    CHECK(s.points[i].edge_pixels <= s.points[i - 1].edge_pixels);
  }
}

TEST_CASE("score rows") {
  ScoreRow r{"parmap", 20.0, 4000.0, 0.12, {0.5, 0.25, 1.0 / 3.0, 1}, 42};
  CHECK(format_score_row(r) == "parmap,20,4000,0.12,0.500000,0.250000,0.333333,1,42");
}
