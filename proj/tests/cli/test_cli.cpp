#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "stable_meb_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string at(const char* name) { return (workdir() / name).string(); }

// Runs the CLI with the given arguments; returns its exit status.
int cli(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string("'") + STABLE_MEB_CLI + "' " + args;
  cmd += stdout_file.empty() ? " >/dev/null" : " >'" + stdout_file + "'";
  cmd += " 2>'" + at("stderr.txt") + "'";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<nlohmann::json> lines_of(const std::string& path) {
  std::vector<nlohmann::json> out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

void strip_time(std::vector<nlohmann::json>& v) {
  for (auto& j : v) j.erase("wall_time_ms");
}

}  // namespace

TEST_CASE("gen simplex writes header plus payload") {
  REQUIRE(cli("gen --family simplex --d 3 --out " + at("simplex.mebd")) == 0);
  CHECK(fs::file_size(at("simplex.mebd")) == 22 + 4 * 3 * 8);
  const auto side = nlohmann::json::parse(slurp(at("simplex.mebd") + ".json"));
  CHECK(side["spec"]["n"] == 4);
  CHECK(side["spec"]["family"] == "regular-simplex");
}

TEST_CASE("gen is deterministic") {
  REQUIRE(cli("gen --family uniform-ball --n 100000 --d 50 --seed 7 --out " + at("u1.mebd")) == 0);
  REQUIRE(cli("gen --family uniform-ball --n 100000 --d 50 --seed 7 --out " + at("u2.mebd")) == 0);
  CHECK(slurp(at("u1.mebd")) == slurp(at("u2.mebd")));
  CHECK(slurp(at("u1.mebd") + ".json") == slurp(at("u2.mebd") + ".json"));
}

TEST_CASE("gen validates planted outlier counts") {
  CHECK(cli("gen --family planted-outliers --gamma 0.3 --n 10 --out " + at("p3.mebd")) == 0);
  const auto side = nlohmann::json::parse(slurp(at("p3.mebd") + ".json"));
  CHECK(side["inliers"].size() == 7);
  CHECK(cli("gen --family planted-outliers --gamma 0.25 --n 10 --out " + at("p25.mebd")) != 0);
  CHECK(slurp(at("stderr.txt")).find("integer") != std::string::npos);
  CHECK(cli("gen --family nonsense --out " + at("x.mebd")) != 0);
}

TEST_CASE("run on a singleton") {
  {
    std::ofstream csv(at("one.csv"));
    csv << "0.5,-1.5\n";
  }
  REQUIRE(cli("run --dataset " + at("one.csv") + " --algorithm alg1 --trials 1", at("one.jsonl")) == 0);
  const auto v = lines_of(at("one.jsonl"));
  REQUIRE(v.size() == 1);
  CHECK(v[0]["radius"] == 0.0);
  CHECK(v[0]["coverage_count"] == 1);
}

TEST_CASE("run is deterministic and ordered") {
  const std::string base = "run --dataset " + at("u1.mebd") + " --algorithm alg2 --trials 6 --seed 40 --epsilon 0.1";
  REQUIRE(cli(base, at("r1.jsonl")) == 0);
  REQUIRE(std::system(("STABLE_MEB_THREADS=3 '" + std::string(STABLE_MEB_CLI) + "' " + base + " --out " +
                       at("r2.jsonl") + " 2>/dev/null").c_str()) == 0);
  auto a = lines_of(at("r1.jsonl"));
  auto b = lines_of(at("r2.jsonl"));
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]["stream"] == 40 + i);
  strip_time(a);
  strip_time(b);
  CHECK(a == b);
}

TEST_CASE("alg2 sample budget does not depend on n") {
  REQUIRE(cli("gen --family uniform-ball --n 200000 --d 50 --seed 7 --out " + at("u200.mebd")) == 0);
  const std::string flags = " --algorithm alg2 --trials 3 --seed 1 --epsilon 0.1";
  REQUIRE(cli("run --dataset " + at("u1.mebd") + flags, at("n1.jsonl")) == 0);
  REQUIRE(cli("run --dataset " + at("u200.mebd") + flags, at("n2.jsonl")) == 0);
  const auto a = lines_of(at("n1.jsonl"));
  const auto b = lines_of(at("n2.jsonl"));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i]["sample_budget"] == b[i]["sample_budget"]);
    CHECK(a[i]["samples_drawn"].get<std::size_t>() <= a[i]["sample_budget"].get<std::size_t>());
    CHECK(b[i]["samples_drawn"].get<std::size_t>() <= b[i]["sample_budget"].get<std::size_t>());
  }
}

TEST_CASE("run reports errors") {
  CHECK(cli("run --dataset " + at("missing.mebd")) == 2);
  CHECK(cli("run --dataset " + at("u1.mebd") + " --epsilon 1.5") == 2);
  CHECK(cli("run --dataset " + at("u1.mebd") + " --trials 0") == 2);
  CHECK(cli("run --dataset " + at("u1.mebd") + " --algorithm alg7") == 2);
  CHECK(cli("run") != 0);
}

TEST_CASE("eval exit codes") {
  REQUIRE(cli("run --dataset " + at("u1.mebd") +
                  " --algorithm quick --trials 50 --reference coreset-highprec",
              at("quick.jsonl")) == 0);
  CHECK(cli("eval " + at("quick.jsonl"), at("summary.txt")) == 0);
  CHECK(slurp(at("summary.txt")).find("PASS") != std::string::npos);

  // Half the trials lose coverage.
  auto v = lines_of(at("quick.jsonl"));
  {
    std::ofstream out(at("half.jsonl"));
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto j = v[i];
      if (i % 2 == 0) j["coverage_count"] = 0;
      out << j.dump() << "\n";
    }
  }
  CHECK(cli("eval " + at("half.jsonl") + " --out " + at("half.json"), at("half.txt")) == 1);
  const auto summary = nlohmann::json::parse(slurp(at("half.json")));
  CHECK(summary["groups"][0]["frequency"] == 0.5);
  CHECK(summary["pass"] == false);

  { std::ofstream empty(at("empty.jsonl")); }
  CHECK(cli("eval " + at("empty.jsonl"), at("empty.txt")) != 0);
  CHECK(slurp(at("empty.txt")).find("no trials") != std::string::npos);

  {
    std::ofstream out(at("bad.jsonl"));
    out << v[0].dump() << "\nnot json\n";
  }
  CHECK(cli("eval " + at("bad.jsonl"), at("bad.txt")) != 0);
  CHECK(slurp(at("bad.txt")).find("1 malformed") != std::string::npos);
  CHECK(cli("eval " + at("nothing-here.jsonl")) == 2);
}

TEST_CASE("sweep covers the cartesian product") {
  REQUIRE(cli("gen --family planted-outliers --n 1000 --d 3 --gamma 0.1 --out " + at("pl.mebd")) == 0);
  REQUIRE(cli("sweep --dataset " + at("pl.mebd") +
                  " --algorithm outlier --epsilon 0.1,0.2 --beta 0.05,0.1 --gamma 0.1 --trials 2"
                  " --reference ground-truth",
              at("sweep.jsonl")) == 0);
  const auto v = lines_of(at("sweep.jsonl"));
  REQUIRE(v.size() == 8);
  CHECK(v[0]["outlier_cfg"]["epsilon"] == 0.1);
  CHECK(v[7]["outlier_cfg"]["epsilon"] == 0.2);
  CHECK(v[7]["outlier_cfg"]["beta"] == 0.1);
  CHECK(v[0]["gamma"] == 0.1);
  CHECK(v[0]["target_coverage"] == 900);
  const auto side = nlohmann::json::parse(slurp(at("pl.mebd") + ".json"));
  CHECK(side["reference_radius"].contains("ground-truth"));
}
