#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "qspe/montecarlo.hpp"

using namespace qspe;

TEST(Qudit, ElementCount) {
  const auto r = qsp_energy_qudit(6, EomModel{}, RngStream{1, 6}, 20);
  EXPECT_EQ(r.elements, 15u + 6u);
  EomModel m;
  m.ignore_output_phases = true;
  EXPECT_EQ(qsp_energy_qudit(6, m, RngStream{1, 6}, 20).elements, 15u);
  EXPECT_EQ(r.failures, 0u);
}

TEST(Qudit, IndependentOfThreadCount) {
  const RngStream s{77, 8};
  const auto a = qsp_energy_qudit(8, EomModel{}, s, 500, 1);
  const auto b = qsp_energy_qudit(8, EomModel{}, s, 500, 4);
  const auto c = qsp_energy_qudit(8, EomModel{}, s, 500, 7);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std, b.std);
  EXPECT_EQ(a.mean, c.mean);
}

// Recomputes the mean trial by trial through the public mesh API.
TEST(Qudit, MeanMatchesManualLoop) {
  const RngStream s{3, 4};
  double sum = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    sum += mesh_energy(EomModel{}, clements_decompose(haar_unitary(4, s.substream(i)))).total;
  }
  EXPECT_NEAR(qsp_energy_qudit(4, EomModel{}, s, 200).mean, sum / 200, 1e-20);
}

// Frozen regression value: seed 1, stream 2, 1000 samples. Sanity: one Haar
// crossing averages 88.2 nJ * (0.297 + 1/3) and each output phase 88.2 nJ / 3,
// about 114 nJ in total.
constexpr double kGoldenDim2Mean = 1.1155232044730364e-07;
TEST(Qudit, GoldenTwoModeValue) {
  const auto r = qsp_energy_qudit(2, EomModel{}, RngStream{1, 2}, 1000);
  EXPECT_NEAR(r.mean, kGoldenDim2Mean, 1e-12 * kGoldenDim2Mean);
  EXPECT_NEAR(r.mean, 114.4e-9, 5e-9);
}

// Energy per crossing settles once d is large, so E(2d)/E(d) approaches the
// crossing-count ratio (2d)(2d-1)/(d(d-1)).
TEST(Qudit, DoublingTracksCrossingRatio) {
  const auto e32 = qsp_energy_qudit(32, EomModel{}, RngStream{2, 32}, 300, 4);
  const auto e64 = qsp_energy_qudit(64, EomModel{}, RngStream{2, 64}, 300, 4);
  const double crossing_ratio = (64.0 * 63.0) / (32.0 * 31.0);
  EXPECT_NEAR(e64.mean / e32.mean, crossing_ratio, 0.15 * crossing_ratio);
}

TEST(Qudit, RejectsBadInput) {
  EXPECT_THROW(qsp_energy_qudit(1, EomModel{}, RngStream{}, 10), std::invalid_argument);
  EXPECT_THROW(qsp_energy_qudit(4, EomModel{}, RngStream{}, 0), std::invalid_argument);
}

TEST(Sweep, QuditRowsIncrease) {
  SweepSpec spec;
  spec.points = {2, 4, 8, 16};
  spec.samples = 300;
  spec.seed = 5;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].error.empty());
    EXPECT_EQ(rows[i].x, spec.points[i]);
    EXPECT_EQ(rows[i].seed, 5u);
    EXPECT_FALSE(rows[i].cnots.has_value());
    if (i > 0) EXPECT_GT(rows[i].mean_energy, rows[i - 1].mean_energy);
  }
}

TEST(Sweep, PointUsesOwnStream) {
  SweepSpec a;
  a.points = {4, 8};
  a.samples = 100;
  SweepSpec b = a;
  b.points = {8};
  EXPECT_EQ(run_sweep(a)[1].mean_energy, run_sweep(b)[0].mean_energy);
}

TEST(Sweep, QubitRowsCarryCounts) {
  SweepSpec spec;
  spec.encoding = Encoding::kQubitProgrammable;
  spec.points = {2, 4};
  spec.samples = 100;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].cnots.value(), 13.0);
  EXPECT_EQ(rows[1].sqos.value(), 30u);
  EXPECT_NEAR(rows[1].attempts_log10.value(), 12.41, 1e-2);
}

TEST(Sweep, ErrorsAreRecordedPerRow) {
  SweepSpec spec;
  spec.encoding = Encoding::kQubitDedicated;
  spec.points = {1, 3};
  spec.samples = 50;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].error.empty());
}

TEST(Sweep, Validation) {
  SweepSpec spec;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.points = {4, 2};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.points = {2, 4};
  spec.samples = 0;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
}

TEST(Sweep, DeterministicAcrossThreads) {
  SweepSpec spec;
  spec.points = {2, 4, 8};
  spec.samples = 200;
  spec.seed = 11;
  std::ostringstream one, four;
  spec.threads = 1;
  write_sweep_csv(one, run_sweep(spec));
  spec.threads = 4;
  write_sweep_csv(four, run_sweep(spec));
  EXPECT_EQ(one.str(), four.str());
}

TEST(Csv, SweepFormat) {
  SweepRow q;
  q.x = 4;
  q.mean_energy = 1.5e-6;
  q.std_energy = 2e-7;
  q.samples = 10;
  q.seed = 3;
  SweepRow b;
  b.encoding = Encoding::kQubitDedicated;
  b.x = 2;
  b.mean_energy = 0.25;
  b.std_energy = 0.0;
  b.samples = 10;
  b.seed = 3;
  b.cnots = 3.0;
  b.sqos = 15;
  b.attempts_log10 = 2.5;
  std::ostringstream os;
  write_sweep_csv(os, {q, b});
  EXPECT_EQ(os.str(), std::string(kSweepCsvHeader) + "\n" +
                          "4,qudit,,1.5e-06,2e-07,10,3,,,\n"
                          "2,qubit,dedicated,0.25,0,10,3,3,15,2.5\n");
}

TEST(Csv, CountsFormat) {
  std::ostringstream os;
  write_counts_csv(os, count_sweep({2, 4}));
  EXPECT_EQ(os.str(), "n,bergholm,plesch,modified\n2,2,1.5,3.5\n4,42,9,13\n");
}

TEST(Csv, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 88.2e-9, 1e300, -2.5}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Encoding, Parse) {
  EXPECT_EQ(parse_encoding("qudit"), Encoding::kQudit);
  EXPECT_EQ(parse_encoding("qubit_dedicated"), Encoding::kQubitDedicated);
  EXPECT_EQ(parse_encoding(to_string(Encoding::kQubitProgrammable)),
            Encoding::kQubitProgrammable);
  EXPECT_THROW(parse_encoding("qutrit"), std::invalid_argument);
}
