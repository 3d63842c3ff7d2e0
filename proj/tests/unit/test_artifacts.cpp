#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "diffwave/artifacts.hpp"
#include "diffwave/error.hpp"
#include "diffwave/profile_io.hpp"

using namespace diffwave;

TEST(Artifacts, GitBlobHash) {
  EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST(Artifacts, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> exp10(-300.0, 300.0), mant(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = mant(rng) * std::pow(10.0, exp10(rng));
    EXPECT_EQ(parse_double(format_double(v), "v"), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(parse_double(format_double(-0.0), "v"), 0.0);
  EXPECT_TRUE(std::signbit(parse_double(format_double(-0.0), "v")));
}

TEST(Artifacts, ParseDoubleRejectsGarbage) {
  EXPECT_THROW(parse_double("1.5x", "dt"), ConfigError);
  EXPECT_THROW(parse_double("", "dt"), ConfigError);
  try {
    parse_double("abc", "t_final");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("t_final"), std::string::npos);
  }
  EXPECT_EQ(trim("  a b \t"), "a b");
}

TEST(Artifacts, KeyValueRoundTrip) {
  std::istringstream in("# header\nkind = cauchy  \n\n  dx=0.05 # inline\nname = a b\n");
  const KeyValues kv = parse_key_values(in);
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"kind", "cauchy"}));
  EXPECT_EQ(kv[1].second, "0.05");
  EXPECT_EQ(kv[2].second, "a b");
  std::ostringstream out;
  write_key_values(out, kv);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_key_values(back), kv);

  std::istringstream bad("no equals sign\n");
  EXPECT_THROW(parse_key_values(bad), ConfigError);
}

TEST(Artifacts, ColumnsHeader) {
  std::ostringstream os;
  write_columns(os, "series", {{"t", "1"}, {"norm", "1"}}, {{0.0, 0.5}, {1.0, 0.25}});
  EXPECT_EQ(os.str(), "# series\n# t[1] norm[1]\n0 0.5\n1 0.25\n");
}

TEST(ProfileIo, BitIdenticalRoundTrip) {
  ModelParams p;
  p.u_minus = -0.05;
  p.u_plus = 0.05;
  const DiffusionWave wave(solve_profile_cauchy(p), p);
  std::stringstream ss;
  write_profile(ss, wave);
  const std::string first = ss.str();
  const DiffusionWave back = read_profile(ss);
  EXPECT_EQ(back.profile().phi, wave.profile().phi);
  EXPECT_EQ(back.profile().dphi, wave.profile().dphi);
  EXPECT_EQ(back.profile().xi_grid.x0, wave.profile().xi_grid.x0);
  EXPECT_EQ(back.profile().xi_grid.dx, wave.profile().xi_grid.dx);
  EXPECT_EQ(back.params().kappa, p.kappa);
  std::ostringstream again;
  write_profile(again, back);
  EXPECT_EQ(again.str(), first);
}

TEST(ProfileIo, HalfLineFileAndErrors) {
  ModelParams p;
  p.u_minus = -0.025;
  p.u_plus = 0.025;
  const DiffusionWave wave(solve_profile_halfline(p, 0.01), p);
  const auto path = std::filesystem::temp_directory_path() / "diffwave_profile_test.txt";
  save_profile(path, wave);
  const DiffusionWave back = load_profile(path);
  EXPECT_EQ(back.profile().domain, ProfileDomain::kHalfLine);
  ASSERT_TRUE(back.profile().beta.has_value());
  EXPECT_EQ(*back.profile().beta, 0.01);
  EXPECT_EQ(git_blob_hash_file(path), git_blob_hash(read_file(path)));
  std::filesystem::remove(path);

  EXPECT_THROW(load_profile(path), IoError);
  std::istringstream junk("# not a profile\n1 2 3\n");
  EXPECT_THROW(read_profile(junk), IoError);
}
