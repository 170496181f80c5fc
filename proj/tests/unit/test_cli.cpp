#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "curvedpipe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = curvedpipe::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "curvedpipe_cli" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.toml";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("run writes results for a creeping flow") {
  const fs::path d = workdir("run");
  const fs::path cfg = write_config(d, "delta = 0.0\nnr = 6\nntheta = 16\n");
  const Outcome o = invoke({"run", "--config", cfg.string(), "--out-dir", (d / "out").string()});
  CHECK(o.code == curvedpipe::cli::kOk);
  CHECK(o.err.empty());
  CHECK(fs::exists(d / "out" / "state.vtk"));
  CHECK(fs::exists(d / "out" / "result.csv"));
  CHECK(o.out.find("converged=yes") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
  const fs::path d = workdir("bad");
  SUBCASE("delta out of range") {
    const Outcome o = invoke({"run", "--config", write_config(d, "delta = 1.5\n").string()});
    CHECK(o.code == curvedpipe::cli::kConfigError);
    CHECK(o.err.rfind("error: config: ", 0) == 0);
    CHECK(o.err.find("delta must lie in [0,1)") != std::string::npos);
  }
  SUBCASE("unknown key") {
    const Outcome o = invoke({"run", "--config", write_config(d, "alpha2 = 0.1\n").string()});
    CHECK(o.code == curvedpipe::cli::kConfigError);
    CHECK(o.err.find("unknown key alpha2") != std::string::npos);
  }
  SUBCASE("missing file") {
    const Outcome o = invoke({"run", "--config", (d / "absent.toml").string()});
    CHECK(o.code == curvedpipe::cli::kConfigError);
  }
  SUBCASE("bad sweep parameter") {
    const Outcome o = invoke({"sweep", "--param", "pressure", "--values", "1", "--out-dir", d.string()});
    CHECK(o.code == curvedpipe::cli::kConfigError);
    CHECK(o.err.rfind("error: config: ", 0) == 0);
  }
  SUBCASE("bad sweep value") {
    const Outcome o = invoke({"sweep", "--param", "reynolds", "--values", "1,x", "--out-dir", d.string()});
    CHECK(o.code == curvedpipe::cli::kConfigError);
  }
  SUBCASE("unknown flag") {
    const Outcome o = invoke({"run", "--bogus"});
    CHECK(o.code == curvedpipe::cli::kConfigError);
  }
}

TEST_CASE("sweep writes one row per point") {
  const fs::path d = workdir("sweep");
  const fs::path cfg = write_config(d, "delta = 0.2\nnr = 6\nntheta = 16\n");
  const Outcome o = invoke({"sweep", "--config", cfg.string(), "--out-dir", d.string(), "--param",
                            "reynolds", "--range", "0:2:1"});
  CHECK(o.code == curvedpipe::cli::kOk);
  std::ifstream in(d / "results.csv");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 4);
}

TEST_CASE("fast validation passes") {
  const Outcome o = invoke({"validate", "--level", "fast"});
  CHECK(o.code == curvedpipe::cli::kOk);
  CHECK(o.err.empty());
}
