#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "gnsw/io.hpp"
#include "helpers.hpp"

using namespace gnsw;
namespace fs = std::filesystem;

namespace {
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gnsw-io-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};
}  // namespace

TEST_SUITE("io") {

TEST_CASE("seventeen digits round-trip doubles exactly") {
  for (double x : {1.0 / 3.0, 0.1, -2.5e17, 1e-300, 6.02214076e23, 0.0, -0.0}) {
    const std::string s = format_g17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = std::ldexp(u(rng), static_cast<int>(rng() % 600) - 300);
    CHECK(std::strtod(format_g17(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("atomic text writes") {
  TempDir dir;
  const std::string p = dir.file("out.txt");
  atomic_write_text(p, "hello\n");
  {
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    CHECK(line == "hello");
  }
  atomic_write_text(p, "replaced\n");
  {
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    CHECK(line == "replaced");
  }
  // No temporary droppings left behind.
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("profile csv round trip") {
  TempDir dir;
  Grid g(25.0, 64);
  std::mt19937 rng(83);
  Profile u = testutil::random_profile(g, rng, 0.7, false, 10);

  const std::string p = dir.file("profile.csv");
  write_profile_csv(p, u);
  Profile back = read_profile_csv(p);
  CHECK(back.grid().N == g.N);
  CHECK(back.grid().P == doctest::Approx(g.P).epsilon(1e-12));
  CHECK(testutil::max_diff(back, u) == 0.0);  // 17 digits: bit-exact values

  // Header and shape are enforced.
  atomic_write_text(dir.file("bad1.csv"), "a,b\n0,1\n");
  CHECK_THROWS_AS(read_profile_csv(dir.file("bad1.csv")), std::runtime_error);
  atomic_write_text(dir.file("bad2.csv"), "x,zeta\n0,1\n1,2\n");
  CHECK_THROWS_AS(read_profile_csv(dir.file("bad2.csv")), std::runtime_error);
  atomic_write_text(dir.file("bad3.csv"),
                    "x,zeta\n-2,0\n-1,0\n0,0\n1.5,0\n2,0\n3,0\n4,0\n5,0\n");
  CHECK_THROWS_AS(read_profile_csv(dir.file("bad3.csv")), std::runtime_error);
  CHECK_THROWS_AS(read_profile_csv(dir.file("missing.csv")), std::runtime_error);
}

TEST_CASE("small tables") {
  TempDir dir;
  const std::string p = dir.file("table.csv");
  write_csv(p, "k,F", {{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.25}});

  std::vector<double> k, F;
  read_kf_csv(p, k, F);
  REQUIRE(k.size() == 3);
  CHECK(k[1] == 1.0);
  CHECK(F[2] == 0.25);

  atomic_write_text(dir.file("bad.csv"), "x,y\n0,1\n");
  CHECK_THROWS_AS(read_kf_csv(dir.file("bad.csv"), k, F), std::runtime_error);
}

}  // TEST_SUITE("io")
