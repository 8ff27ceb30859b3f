#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "cascade/cli.hpp"
#include "cascade/io.hpp"

using namespace cascade;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cascade4");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("cascade4-" + name + "-" + std::to_string(rd()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("semiclassical CSV run") {
  const auto r = invoke({"simulate", "semiclassical", "--case", "I", "--kappa", "1", "--tmax", "12.566", "--steps",
                         "2001", "--format", "csv"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.rfind("t,p1,p2,p3,p4\n0,1,0,0,0\n", 0) == 0);
  std::istringstream in(r.out);
  CHECK(read_csv(in).size() == 2001);
  CHECK(r.err.find("model=semiclassical case=I") != std::string::npos);
  CHECK(r.err.find("wall=") != std::string::npos);
}

TEST_CASE("CLI output parses back to the library trace") {
  const auto r = invoke({"simulate", "quantized", "--case", "VI", "--n", "3", "--g", "0.5", "--steps", "101"});
  REQUIRE(r.status == cli::kExitOk);
  std::istringstream in(r.out);
  const auto parsed = read_csv(in);
  cli::RunConfig c;
  c.model = cli::Model::quantized;
  c.case_id = CaseId::VI;
  c.n = 3;
  c.coupling = 0.5;
  c.steps = 101;
  const auto direct = cli::simulate(c).trace;
  CHECK(parsed.times == direct.times);
  for (std::size_t k = 0; k < 4; ++k) CHECK(parsed.p[k] == direct.p[k]);
  CHECK(parsed.times.back() == doctest::Approx(4.0 * std::numbers::pi / 0.5));
}

TEST_CASE("coherent JSON run carries its metadata") {
  const auto r = invoke({"simulate", "coherent", "--case", "V", "--nbar", "48", "--g", "1", "--tmax", "130", "--steps",
                         "4001", "--format", "json"});
  REQUIRE(r.status == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["nbar"] == 48.0);
  CHECK(j["meta"]["n_max"] == 92);
  CHECK(j["meta"]["weighting_mode"] == "paper");
  for (const char* key : {"t", "p1", "p2", "p3", "p4"}) CHECK(j[key].size() == 4001);
  CHECK(r.err.find("n_max=92") != std::string::npos);
}

TEST_CASE("configuration errors exit 2 and name the field") {
  struct Bad {
    std::vector<std::string> args;
    std::string field;
  };
  const std::vector<Bad> cases{
      {{"simulate", "quantized", "--case", "VIII", "--n", "0", "--g", "1"}, "n"},
      {{"simulate", "semiclassical", "--case", "V"}, "case"},
      {{"simulate", "coherent", "--case", "II"}, "case"},
      {{"simulate", "semiclassical", "--steps", "1"}, "steps"},
      {{"simulate", "semiclassical", "--tmax", "0"}, "tmax"},
      {{"simulate", "semiclassical", "--tmax", "-3"}, "tmax"},
      {{"simulate", "semiclassical", "--kappa", "0"}, "kappa"},
      {{"simulate", "quantized", "--g", "-1"}, "g"},
      {{"simulate", "quantized", "--n", "-2"}, "n"},
      {{"simulate", "quantized", "--n", "1.5"}, "n"},
      {{"simulate", "coherent", "--epsilon", "0.7"}, "epsilon"},
      {{"simulate", "coherent", "--delta", "0.1"}, "delta"},
      {{"simulate", "coherent", "--nbar", "-4"}, "nbar"},
      {{"simulate", "semiclassical", "--format", "xml"}, "format"},
      {{"simulate", "coherent", "--weighting", "odd"}, "weighting"},
      {{"simulate", "semiclassical", "--case", "IX"}, "case"},
      {{"simulate", "fluid"}, "model"},
      {{"simulate"}, "model"},
      {{"simulate", "semiclassical", "--delta", "nan"}, "delta"},
  };
  for (const auto& b : cases) {
    const auto r = invoke(b.args);
    INFO(r.err);
    CHECK(r.status == cli::kExitConfig);
    CHECK(r.err.find(b.field + ":") != std::string::npos);
  }
  CHECK(invoke({"simulate", "semiclassical", "--nonsense"}).status == cli::kExitConfig);
  CHECK(invoke({}).status == cli::kExitConfig);
  CHECK(invoke({"--help"}).status == cli::kExitOk);
}

TEST_CASE("config file with flag precedence") {
  const auto dir = scratch_dir("config");
  const auto path = dir / "run.cfg";
  std::ofstream(path) << "# example\nmodel = quantized\ncase = VII\nn = 2\ng = 1\nsteps = 5  # short\ntmax = 2\n";
  auto r = invoke({"simulate", "--config", path.string()});
  CHECK(r.status == cli::kExitOk);
  std::istringstream in(r.out);
  CHECK(read_csv(in).size() == 5);

  r = invoke({"simulate", "--config", path.string(), "--steps", "7", "--format", "json"});
  CHECK(r.status == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["t"].size() == 7);
  CHECK(j["meta"]["case"] == "VII");

  std::ofstream(path) << "model = quantized\nbogus = 1\n";
  r = invoke({"simulate", "--config", path.string()});
  CHECK(r.status == cli::kExitConfig);
  CHECK(r.err.find("bogus") != std::string::npos);

  std::ofstream(path) << "model quantized\n";
  CHECK(invoke({"simulate", "--config", path.string()}).status == cli::kExitConfig);
  CHECK(invoke({"simulate", "--config", (dir / "missing.cfg").string()}).status == cli::kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("settings parsing") {
  const auto s = cli::parse_config_text("a = 1\n\n  # comment only\nb=two # trailing\n");
  CHECK(s.size() == 2);
  CHECK(s.at("a") == "1");
  CHECK(s.at("b") == "two");
  CHECK_THROWS_AS(cli::parse_config_text("= 3\n"), cli::ConfigError);
  try {
    cli::config_from_settings({{"model", "coherent"}, {"epsilon", "1"}});
    FAIL("expected a ConfigError");
  } catch (const cli::ConfigError& e) {
    CHECK(e.field() == "epsilon");
  }
  const auto c = cli::config_from_settings({{"model", "coherent"}});
  CHECK(c.case_id == CaseId::V);
  CHECK(cli::default_steps(c) == 4001);
  CHECK(cli::default_t_max(c) == doctest::Approx(3.0 * 2.0 * std::numbers::pi * std::sqrt(48.0)));
}

TEST_CASE("output file and I/O failure") {
  const auto dir = scratch_dir("out");
  const auto file = dir / "trace.csv";
  auto r = invoke({"simulate", "semiclassical", "--steps", "3", "-o", file.string()});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.empty());
  CHECK(slurp(file).rfind("t,p1,p2,p3,p4\n", 0) == 0);

  r = invoke({"simulate", "semiclassical", "--steps", "3", "-o", (dir / "no" / "such" / "x.csv").string()});
  CHECK(r.status == cli::kExitIo);

  std::ofstream(dir / "blocker") << "x";
  r = invoke({"reproduce-figures", "--outdir", (dir / "blocker" / "figs").string()});
  CHECK(r.status == cli::kExitIo);
  fs::remove_all(dir);
}

TEST_CASE("numerical failures exit 3") {
  const auto r = invoke({"angles", "--n", "2", "--printed"});
  CHECK(r.status == cli::kExitNumerical);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("eigen and angles subcommands") {
  auto r = invoke({"eigen"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("closed_form -3 -1 1 3") != std::string::npos);

  r = invoke({"eigen", "--n", "0"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("b 5\n") != std::string::npos);

  r = invoke({"eigen", "--delta", "0.5"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("closed_form") == std::string::npos);

  CHECK(invoke({"eigen", "--n", "-1"}).status == cli::kExitConfig);

  r = invoke({"angles"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("theta2 2.3561944901923448") != std::string::npos);

  r = invoke({"angles", "--n", "5"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("formula=corrected") != std::string::npos);
  CHECK(invoke({"angles", "--n", "0"}).status == cli::kExitConfig);
}

TEST_CASE("figure reproduction") {
  const auto dir = scratch_dir("figs");
  const auto r = invoke({"reproduce-figures", "--outdir", dir.string(), "--plot-script"});
  REQUIRE(r.status == cli::kExitOk);

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  REQUIRE(manifest["panels"].size() == 24);
  for (const auto& p : manifest["panels"]) CHECK(fs::exists(dir / p["file"].get<std::string>()));
  CHECK(fs::exists(dir / "plot.gp"));

  std::istringstream a(slurp(dir / "fig1a.csv"));
  std::istringstream d(slurp(dir / "fig1d.csv"));
  const auto fa = read_csv(a);
  const auto fd = read_csv(d);
  CHECK(fa.size() == 2001);
  CHECK(max_series_difference(fa, 1, fd, 4) < 1e-12);

  std::istringstream c(slurp(dir / "fig3a.csv"));
  const auto f3 = read_csv(c);
  CHECK(f3.size() == 4001);
  CHECK(f3.times.back() == doctest::Approx(3.0 * 2.0 * std::numbers::pi * std::sqrt(48.0)));
  fs::remove_all(dir);
}
