#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "ivg/error.hpp"
#include "ivg/scan.hpp"

using namespace ivg;

namespace {

const double kThreshold = std::log(3.0) / 2.0;

std::string to_text(const std::vector<PhasePoint>& pts, OutputFormat f) {
  std::ostringstream os;
  emit(pts, f, os);
  return os.str();
}

}  // namespace

TEST(ParseAxis, AcceptsAllNames) {
  const Axis a = parse_axis("Jp=0:1.5:7");
  EXPECT_EQ(a.name, AxisName::Jp);
  EXPECT_EQ(a.min, 0.0);
  EXPECT_EQ(a.max, 1.5);
  EXPECT_EQ(a.steps, 7);
  EXPECT_EQ(parse_axis("J=-2:2:3").values(), (std::vector<double>{-2.0, 0.0, 2.0}));
  EXPECT_EQ(parse_axis("T=0.5:0.5:1").values(), (std::vector<double>{0.5}));
}

TEST(ParseAxis, RejectsMalformed) {
  for (const char* bad : {"", "J", "J=", "J=0:1", "X=0:1:2", "J=a:1:2", "J=0:1:0", "J=1:0:3",
                          "T=0:1:3", "T=-1:1:3", "J=0:1:2.5", "J=0:1:2:", "J=nan:1:2"}) {
    EXPECT_THROW(parse_axis(bad), DomainError) << bad;
  }
}

TEST(Scan, GridSizeIsCapped) {
  ScanGrid grid;
  grid.axes = {parse_axis("J=0:1:10000"), parse_axis("Jp=0:1:10000")};
  EXPECT_THROW(grid.size(), DomainError);
  EXPECT_THROW(run_scan(grid, {0.0, 0.0, 1.0, 2}), DomainError);
}

TEST(Scan, RejectsDuplicateAxesAndBadBase) {
  ScanGrid grid;
  grid.axes = {parse_axis("J=0:1:2"), parse_axis("J=0:1:2")};
  EXPECT_THROW(run_scan(grid, {0.0, 0.0, 1.0, 2}), DomainError);
  grid.axes = {parse_axis("J=0:1:2")};
  EXPECT_THROW(run_scan(grid, {0.0, 0.0, -1.0, 2}), DomainError);
}

TEST(Scan, ExamplePoint) {
  const PhasePoint p = classify_point({-1.85, 4.5, 2.6, 2});
  EXPECT_EQ(p.n_roots, 3);
  ASSERT_EQ(p.roots.size(), 3u);
  const double reference[3] = {0.0316222, 4.86623, 26.9681};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p.roots[i], reference[i], 1e-4 * reference[i]);
  EXPECT_EQ(p.F.size(), 3u);
  EXPECT_EQ(p.S.size(), 3u);
  EXPECT_TRUE(p.transition);
  ASSERT_TRUE(p.prop51_agree.has_value());
  EXPECT_FALSE(*p.prop51_agree);
}

TEST(Scan, TrivialLineHasOnlyUnitRoot) {
  ScanGrid grid;
  grid.axes = {parse_axis("T=0.2:5:25")};
  for (const PhasePoint& p : run_scan(grid, {0.0, 0.0, 1.0, 2})) {
    ASSERT_EQ(p.n_roots, 1);
    EXPECT_NEAR(p.roots[0], 1.0, 1e-12);
    EXPECT_FALSE(p.transition);
  }
}

TEST(Scan, TransitionFlagFlipsAtThreshold) {
  ScanGrid grid;
  grid.axes = {parse_axis("Jp=0:1.2:241")};
  const auto pts = run_scan(grid, {0.0, 0.0, 1.0, 2});
  ASSERT_EQ(pts.size(), 241u);
  for (const PhasePoint& p : pts) EXPECT_EQ(p.transition, p.Jp > kThreshold) << p.Jp;
  // Root count: one below the threshold, three once a step past it.
  for (const PhasePoint& p : pts) {
    if (p.Jp < kThreshold) {
      EXPECT_EQ(p.n_roots, 1) << p.Jp;
    } else if (p.Jp > kThreshold + 0.005) {
      EXPECT_EQ(p.n_roots, 3) << p.Jp;
    }
  }
}

TEST(Scan, RowMajorOrderFirstAxisSlowest) {
  ScanGrid grid;
  grid.axes = {parse_axis("J=0:1:2"), parse_axis("T=1:3:3")};
  const auto pts = run_scan(grid, {0.0, 0.25, 9.0, 2});
  ASSERT_EQ(pts.size(), 6u);
  const double J[] = {0, 0, 0, 1, 1, 1};
  const double T[] = {1, 2, 3, 1, 2, 3};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(pts[i].J, J[i]);
    EXPECT_EQ(pts[i].T, T[i]);
    EXPECT_EQ(pts[i].Jp, 0.25);
  }
}

TEST(Scan, NoAxesGivesBasePoint) {
  const auto pts = run_scan(ScanGrid{}, {-1.85, 4.5, 2.6, 2});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].n_roots, 3);
}

TEST(Scan, OtherOrderHasNoThermoOrPrediction) {
  ScanGrid grid;
  grid.k = 3;
  grid.axes = {parse_axis("Jp=0.2:1.4:4")};
  for (const PhasePoint& p : run_scan(grid, {0.3, 0.0, 1.0, 2})) {
    EXPECT_TRUE(p.F.empty());
    EXPECT_TRUE(p.S.empty());
    EXPECT_FALSE(p.prop51_agree.has_value());
    EXPECT_GE(p.n_roots, 1);
  }
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  ScanGrid grid;
  grid.axes = {parse_axis("J=-2:2:9"), parse_axis("Jp=0:3:11"), parse_axis("T=0.5:3:3")};
  const auto serial = run_scan(grid, {0.0, 0.0, 1.0, 2}, 1);
  const std::string csv = to_text(serial, OutputFormat::csv);
  const std::string json = to_text(serial, OutputFormat::json);
  for (unsigned threads : {2U, 3U, 8U, 1000U}) {
    const auto par = run_scan(grid, {0.0, 0.0, 1.0, 2}, threads);
    EXPECT_EQ(to_text(par, OutputFormat::csv), csv);
    EXPECT_EQ(to_text(par, OutputFormat::json), json);
  }
}

TEST(Emit, CsvLayout) {
  const std::string empty = to_text({}, OutputFormat::csv);
  EXPECT_EQ(empty,
            "J,Jp,T,beta,c,d,n_roots,u1,u2,u3,F1,F2,F3,S1,S2,S3,transition,prop51_agree\n");
  const std::string one = to_text({classify_point({0.0, 0.0, 1.0, 2})}, OutputFormat::csv);
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 2);
  const std::string row = one.substr(empty.size());
  EXPECT_EQ(row.rfind("0,0,1,1,1,1,1,1,,,", 0), 0u) << row;
  EXPECT_NE(row.find(",false,"), std::string::npos);

  ScanGrid grid;
  grid.k = 3;
  const std::string k3 = to_text(run_scan(grid, {0.0, 0.0, 1.0, 2}), OutputFormat::csv);
  EXPECT_EQ(k3.substr(k3.size() - 8), ",false,\n");
}

TEST(Emit, JsonFieldsAndNulls) {
  ScanGrid grid;
  grid.axes = {parse_axis("Jp=0:1.5:4")};
  const auto j = nlohmann::json::parse(to_text(run_scan(grid, {0.0, 0.0, 1.0, 2}), OutputFormat::json));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 4u);
  for (const char* key : {"J", "Jp", "T", "beta", "c", "d", "n_roots", "u1", "u2", "u3", "F1", "F2",
                          "F3", "S1", "S2", "S3", "transition", "prop51_agree"}) {
    EXPECT_TRUE(j[0].contains(key)) << key;
  }
  EXPECT_EQ(j[0]["n_roots"], 1);
  EXPECT_TRUE(j[0]["u2"].is_null());
  EXPECT_EQ(j[3]["n_roots"], 3);
  EXPECT_TRUE(j[3]["u3"].is_number());
  EXPECT_TRUE(j[3]["transition"].get<bool>());
}

TEST(Emit, FileErrorsAreIoErrors) {
  EXPECT_THROW(emit({}, OutputFormat::csv, std::filesystem::path("/nonexistent-dir/x.csv")),
               IoError);
  const auto path = std::filesystem::temp_directory_path() / "ivg_scan_test.json";
  emit({classify_point({1.0, 0.5, 2.0, 2})}, OutputFormat::json, path);
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
}
