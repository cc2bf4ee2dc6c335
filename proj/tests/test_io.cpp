#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "logbbm/io.hpp"

using namespace logbbm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("logbbm-io-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("formatted doubles round-trip bit for bit") {
  for (double v : {0.1, 1.0 / 3.0, 1e-308, 1.2345678901234567e+300,
                   3.14159265358979323846, -0.0, 2.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv serialization and shape checks") {
  CsvTable t;
  t.columns = {"t", "value"};
  t.rows = {{0.5, 1.0}, {1.5, 0.25}};
  CHECK(csv_to_string(t) == "t,value\n0.5,1\n1.5,0.25\n");

  t.rows.push_back({1.0});
  CHECK_THROWS_AS(csv_to_string(t), std::invalid_argument);
}

TEST_CASE("writers are atomic and leave no staging files behind") {
  TempDir tmp;
  const fs::path target = tmp.path / "out.txt";
  write_text_file(target, "alpha\n");
  CHECK(slurp(target) == "alpha\n");
  write_text_file(target, "beta\n");  // overwrite through the same rename path
  CHECK(slurp(target) == "beta\n");

  CsvTable t;
  t.columns = {"x"};
  t.rows = {{1.5}};
  const fs::path csv_path = tmp.path / "table.csv";
  write_csv(csv_path, t);
  CHECK(slurp(csv_path) == "x\n1.5\n");

  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(tmp.path)) {
    ++entries;
    CHECK(e.path().extension() != ".tmp");
  }
  CHECK(entries == 2);
}

TEST_CASE("a failed write leaves no file at the destination") {
  const fs::path bad = "/proc/logbbm-definitely-unwritable/out.txt";
  CHECK_THROWS_AS(write_text_file(bad, "x"), std::runtime_error);
  CHECK(!fs::exists(bad));
}
