#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <json.hpp>

#include "qkdpp/cli/commands.hpp"
#include "qkdpp/cli/config.hpp"
#include "qkdpp/protocol/tcp_channel.hpp"

using namespace qkdpp;
using namespace qkdpp::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qkdpp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("qkdpp_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSim = R"({"N": 100000, "eta": 0.1, "e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4})";

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "colour": 1})"),
                  ConfigError);
  try {
    (void)parse_config(R"({"e_bx": 0.04, "eps_target": 1e-4})");
    FAIL("missing field accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("e_bz") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"e_bx": 1.5, "e_bz": 0.04, "eps_target": 1e-4})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "f_ec": 0.9})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "N": 10.5})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "curve": {"kind": "spiral"}})"),
      ConfigError);
  CHECK_THROWS_AS(fault_from_name("nope"), ConfigError);

  const RunConfig rc = parse_config(R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "N": 1e5})");
  CHECK(rc.session.N == 100000);
  CHECK(rc.plan_n() == static_cast<std::uint64_t>(std::llround(1e5 * rc.session.eta)));

  const std::string bad = write("bad.json", R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4, "zzz": 0})");
  const Run r = invoke({"optimize", "--config", bad});
  CHECK(r.code == kConfig);
  CHECK(r.err.find("zzz") != std::string::npos);
  CHECK(invoke({"optimize", "--config", (scratch() / "missing.json").string()}).code == kConfig);
  CHECK(invoke({"optimize"}).code == kConfig);
  CHECK(invoke({"frobnicate"}).code == kConfig);
  CHECK(invoke({"--help"}).code == kOk);
}

TEST_CASE("bounds subcommands") {
  const Run r = invoke({"bounds", "entropy", "--p", "0.5"});
  REQUIRE(r.code == kOk);
  CHECK(json::parse(r.out).at("binary_entropy").get<double>() == 1.0);
  const json k3 = json::parse(invoke({"bounds", "k3", "--eps", "1e-7", "--n", "10000000"}).out);
  CHECK(k3.at("k3").get<long>() == 260);
  const json z = json::parse(invoke({"bounds", "zeta", "--eps", "1e-7"}).out);
  CHECK(z.at("zeta").get<double>() == doctest::Approx(std::sqrt(1e-7 * (2 - 1e-7))));
  const json c = json::parse(invoke({"bounds", "counts", "--N", "60", "--n", "20", "--k", "5", "--m", "8"}).out);
  CHECK(c.at("bound").get<double>() >= c.at("hypergeometric_exact").get<double>());
  CHECK(invoke({"bounds", "entropy", "--p", "1.5"}).code == kConfig);
  CHECK(invoke({"bounds"}).code == kConfig);
}

TEST_CASE("optimize at the reference operating point") {
  const std::string cfg = write("ref.json", R"({"n": 10000000, "e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-7})");
  const std::string plan_path = (scratch() / "plan.json").string();
  const Run r = invoke({"optimize", "--config", cfg, "--out", plan_path});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("NR") != std::string::npos);
  CHECK(r.out.find("asymptotic") != std::string::npos);
  const json plan = json::parse(slurp(plan_path));
  CHECK(plan.at("nr").get<double>() == doctest::Approx(4.41e6).epsilon(0.01));
  CHECK(plan.at("zeta").get<double>() == doctest::Approx(4.4884e-4).epsilon(0.001));

  const std::string tiny = write("tiny.json", R"({"n": 100, "e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-7})");
  CHECK(invoke({"optimize", "--config", tiny}).code == kInfeasible);
}

TEST_CASE("curve output") {
  const std::string cfg = write("curve.json", R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-7,
    "curve": {"kind": "rate_vs_n", "ns": [100000, 1000000], "epsilons": [1e-7, 1e-10]}})");
  const Run csv = invoke({"curve", "--config", cfg});
  REQUIRE(csv.code == kOk);
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,epsilon,rate,q_x,theta_x,theta_z");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == 4);

  const Run js = invoke({"curve", "--config", cfg, "--format", "json"});
  REQUIRE(js.code == kOk);
  const json j = json::parse(js.out);
  REQUIRE(j.at("rows").size() == 4);
  // the CSV rows round-trip to the JSON values
  std::istringstream again(csv.out);
  std::getline(again, header);
  for (const auto& row : j.at("rows")) {
    std::string line;
    std::getline(again, line);
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::getline(cells, cell, ',');
      CHECK(std::stod(cell) == row[i].get<double>());
    }
  }

  const std::string empty = write("empty.json", R"({"e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-7,
    "curve": {"kind": "rate_vs_n", "ns": [], "epsilons": [1e-7]}})");
  CHECK(invoke({"curve", "--config", empty}).code == kConfig);
}

TEST_CASE("simulate in memory") {
  const std::string cfg = write("sim.json", kSim);
  const std::string a = (scratch() / "a.json").string();
  const std::string b = (scratch() / "b.json").string();
  const std::string t = (scratch() / "t.txt").string();
  REQUIRE(invoke({"simulate", "--config", cfg, "--seed", "11", "--out", a, "--transcript", t}).code == kOk);
  REQUIRE(invoke({"simulate", "--config", cfg, "--seed", "11", "--out", b}).code == kOk);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(t).empty());
  const json j = json::parse(slurp(a));
  CHECK(j.at("keys_equal").get<bool>());
  CHECK(j.at("alice").at("final_key_hex") == j.at("bob").at("final_key_hex"));

  REQUIRE(invoke({"simulate", "--config", cfg, "--seed", "12", "--out", b}).code == kOk);
  CHECK(slurp(a) != slurp(b));

  const std::string plan = (scratch() / "simplan.json").string();
  const std::string cfg_n = write("simn.json", R"({"n": 10000, "e_bx": 0.04, "e_bz": 0.04, "eps_target": 1e-4})");
  REQUIRE(invoke({"optimize", "--config", cfg_n, "--out", plan}).code == kOk);
  REQUIRE(invoke({"simulate", "--config", cfg, "--seed", "11", "--plan", plan, "--out", b}).code == kOk);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("simulate with injected faults") {
  const std::string cfg = write("sim.json", kSim);
  Run r = invoke({"simulate", "--config", cfg, "--seed", "3", "--inject-fault", "basis_sift"});
  CHECK(r.code == kAbort);
  CHECK(r.err.find("aborted at step basis_sift") != std::string::npos);
  r = invoke({"simulate", "--config", cfg, "--seed", "3", "--inject-fault", "ev_tag"});
  CHECK(r.code == kAbort);
  CHECK(r.err.find("aborted at step error_verify") != std::string::npos);
  r = invoke({"simulate", "--config", cfg, "--seed", "3", "--inject-fault", "pa_seed"});
  CHECK(r.code == kAbort);
  CHECK(r.err.find("aborted at step privacy_amplify") != std::string::npos);
  CHECK(invoke({"simulate", "--config", cfg, "--inject-fault", "nope"}).code == kConfig);
}

TEST_CASE("simulate over tcp") {
  const std::string cfg = write("sim.json", kSim);
  // find a free port, then release it for bob
  std::uint16_t port = 0;
  {
    TcpListener probe("127.0.0.1", 0);
    port = probe.port();
  }
  const std::string addr = "127.0.0.1:" + std::to_string(port);
  const std::string a = (scratch() / "tcp_a.json").string();
  const std::string b = (scratch() / "tcp_b.json").string();
  Run bob;
  std::thread t([&] { bob = invoke({"simulate", "--config", cfg, "--seed", "5", "--transport", "tcp", "--role", "bob",
                                 "--listen", addr, "--out", b}); });
  const Run alice = invoke({"simulate", "--config", cfg, "--seed", "5", "--transport", "tcp", "--role", "alice",
                         "--connect", addr, "--out", a});
  t.join();
  REQUIRE(alice.code == kOk);
  REQUIRE(bob.code == kOk);
  const json ja = json::parse(slurp(a));
  const json jb = json::parse(slurp(b));
  CHECK(ja.at("party").at("final_key_hex") == jb.at("party").at("final_key_hex"));

  // the tcp run derives the same key as the in-memory run
  const std::string m = (scratch() / "tcp_m.json").string();
  REQUIRE(invoke({"simulate", "--config", cfg, "--seed", "5", "--out", m}).code == kOk);
  CHECK(json::parse(slurp(m)).at("alice").at("final_key_hex") == ja.at("party").at("final_key_hex"));
}
