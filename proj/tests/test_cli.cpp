#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "formation_lab/io.hpp"

using namespace formation_lab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run flab(const std::string& args) {
  const std::string cmd = std::string(FLAB_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "formation_lab_cli";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kSmall = std::string("--catalog ") + FORMATION_LAB_SAMPLES + "/small_catalog.json";

}  // namespace

TEST_CASE("passing runs exit 0", "[cli]") {
  const Run a = flab(kSmall + " verify --theorem a --formation u");
  CHECK(a.code == 0);
  const auto records = parse_verdicts(a.out, ReportFormat::Jsonl);
  CHECK_FALSE(records.empty());
  for (const auto& r : records) CHECK(r.verdict == "pass");

  CHECK(flab("--max-order 24 verify --theorem b --formation u").code == 0);
  CHECK(flab("--max-order 24 verify --theorem lemmas --formation na").code == 0);
  CHECK(flab("--max-order 30 classify").code == 0);
}

TEST_CASE("falsified checks exit 1", "[cli]") {
  const Run r = flab("--max-order 12 --falsify theorem-a:U verify --theorem a --formation u");
  CHECK(r.code == 1);
  const auto records = parse_verdicts(r.out, ReportFormat::Jsonl);
  REQUIRE_FALSE(records.empty());
  for (const auto& v : records) {
    CHECK(v.verdict == "fail");
    CHECK(v.witness == "falsified on request");
  }
}

TEST_CASE("usage and input errors exit 2", "[cli]") {
  CHECK(flab("bogus").code == 2);
  CHECK(flab("verify --theorem z").code == 2);
  CHECK(flab("verify --theorem a --formation g").code == 2);
  const fs::path empty = scratch("empty.json");
  std::ofstream(empty) << "{\"families\": []}\n";
  CHECK(flab("--catalog " + empty.string() + " classify").code == 2);
  CHECK(flab("--catalog /nonexistent/catalog.json classify").code == 2);
  CHECK(flab("show NoSuchGroup").code == 2);
}

TEST_CASE("reports are deterministic under a fixed epoch", "[cli]") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  const std::string base = "SOURCE_DATE_EPOCH=1000 ";
  const std::string args = " --max-order 20 --format csv --jobs 1 ";
  CHECK(std::system((base + FLAB_PATH + args + "--out " + a.string() + " classify 2>/dev/null").c_str()) == 0);
  CHECK(std::system((base + FLAB_PATH + " --max-order 20 --format csv --jobs 3 --out " + b.string() + " classify 2>/dev/null")
                        .c_str()) == 0);
  const auto ra = read_verdicts(a.string(), ReportFormat::Csv);
  CHECK_FALSE(ra.empty());
  CHECK(ra == read_verdicts(b.string(), ReportFormat::Csv));
  for (const auto& r : ra) CHECK(r.timestamp == "1970-01-01T00:16:40Z");
}

TEST_CASE("single-group subcommands", "[cli]") {
  const Run s = flab("show 'SL(2,5)'");
  CHECK(s.code == 0);
  CHECK(s.out.find("[2, 60]") != std::string::npos);
  const Run f = flab(std::string("factorize ") + FORMATION_LAB_SAMPLES + "/groups/s3.json");
  CHECK(f.code == 0);
  CHECK_FALSE(f.out.empty());
}
