#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "stable_meb/dataset_io.hpp"
#include "stable_meb/errors.hpp"

using namespace smeb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "stable_meb_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

}  // namespace

TEST_CASE("binary layout") {
  const PointSet p(2, 3, {1.5, -2, 0, 1e300, -0.0, 3});
  const auto bytes = encode_dataset(p);
  REQUIRE(bytes.size() == 22 + 2 * 3 * 8);
  CHECK(bytes[0] == 'M');
  CHECK(bytes[3] == 'D');
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 2);
  CHECK(bytes[14] == 3);
  // 1.5 = 0x3FF8000000000000, little-endian.
  CHECK(bytes[22 + 7] == 0x3F);
  CHECK(bytes[22 + 6] == 0xF8);
  const PointSet q = decode_dataset(bytes);
  CHECK(q.n() == 2);
  CHECK(q.d() == 3);
  CHECK(std::equal(p.data().begin(), p.data().end(), q.data().begin()));
}

TEST_CASE("decoder rejects malformed input") {
  const PointSet p(1, 2, {1, 2});
  auto bytes = encode_dataset(p);
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  bad[4] = 2;
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  bad.push_back(0);
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  // NaN in the payload.
  for (int i = 0; i < 8; ++i) bad[22 + i] = 0xFF;
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  bad[6] = 0;  // n = 0
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  bad = bytes;
  bad[13] = 0x80;  // absurd n
  CHECK_THROWS_AS(decode_dataset(bad), IoError);
  CHECK_THROWS_AS(decode_dataset({'M', 'E'}), IoError);
}

TEST_CASE("file round trip and sniffing") {
  const PointSet p(3, 2, {0, 1, 2, 3, 4, 5});
  const fs::path bin = scratch("a.mebd");
  write_dataset(bin, p);
  CHECK(fs::file_size(bin) == 22 + 48);
  const PointSet q = load_points(bin);
  CHECK(std::equal(p.data().begin(), p.data().end(), q.data().begin()));

  const fs::path csv = scratch("a.csv");
  write_text(csv, "0, 1\n2,3\r\n\n4 ,5\n");
  const PointSet c = load_points(csv);
  CHECK(c.n() == 3);
  CHECK(std::equal(p.data().begin(), p.data().end(), c.data().begin()));

  write_text(csv, "0,1\n2\n");
  CHECK_THROWS_AS(read_csv(csv), IoError);
  write_text(csv, "0,abc\n");
  CHECK_THROWS_AS(read_csv(csv), IoError);
  write_text(csv, "0,nan\n");
  CHECK_THROWS_AS(read_csv(csv), IoError);
  write_text(csv, "\n\n");
  CHECK_THROWS_AS(read_csv(csv), IoError);
  CHECK_THROWS_AS(load_points(scratch("missing.mebd")), IoError);
}

TEST_CASE("sidecar round trip") {
  const fs::path side = scratch("s.mebd.json");
  fs::remove(side);
  const Sidecar empty = read_sidecar(side);
  CHECK_FALSE(empty.spec.has_value());
  CHECK(empty.reference_radius.empty());

  Sidecar s;
  InstanceSpec spec;
  spec.family = Family::PlantedOutliers;
  spec.n = 10;
  spec.d = 2;
  spec.gamma = 0.3;
  spec.seed = 18446744073709551615ull;
  s.spec = spec;
  s.inliers = std::vector<Index>{0, 2, 5};
  s.reference_radius["ground-truth"] = 0.987654321;
  write_sidecar(side, s);
  const Sidecar t = read_sidecar(side);
  REQUIRE(t.spec.has_value());
  CHECK(t.spec->family == Family::PlantedOutliers);
  CHECK(t.spec->seed == spec.seed);
  CHECK(t.spec->gamma == 0.3);
  CHECK(*t.inliers == *s.inliers);
  CHECK(t.reference_radius.at("ground-truth") == 0.987654321);
  CHECK(sidecar_path("x/y.mebd") == fs::path("x/y.mebd.json"));

  write_text(side, "{not json");
  CHECK_THROWS_AS(read_sidecar(side), IoError);
}
