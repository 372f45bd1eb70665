#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace {

using json = nlohmann::json;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + TB_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0)
    out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> data_lines(const std::string& out) {
  std::vector<std::string> lines;
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#')
      lines.push_back(line);
  return lines;
}

std::vector<double> split_csv(const std::string& line) {
  std::vector<double> vals;
  std::istringstream is(line);
  std::string tok;
  while (std::getline(is, tok, ','))
    vals.push_back(std::strtod(tok.c_str(), nullptr));
  return vals;
}

const std::string kFig2Args =
    "scan-amplitude --m-gamma 0 --lambda 1 --pitch 0.2 --nf 2 --lf 1 "
    "--mf -1 --mf 0 --mf 1 --b-max 3 --n-points 64";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("scan-amplitude emits the documented CSV") {
  const RunResult r = run_cli(kFig2Args);
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 193); // header + 192 data rows
  CHECK(lines[0] == "b_over_lambda,m_f,re_amp,im_amp,abs_amp");
  // ordered by (m_f, b): first block m_f = -1 starting at b = 0
  const auto first = split_csv(lines[1]);
  CHECK(first[0] == 0.0);
  CHECK(first[1] == -1.0);
  const auto last = split_csv(lines.back());
  CHECK(last[0] == doctest::Approx(3.0));
  CHECK(last[1] == 1.0);
  // abs column is consistent with re/im at full precision
  for (size_t i = 1; i < lines.size(); i += 17) {
    const auto v = split_csv(lines[i]);
    REQUIRE(v.size() == 5);
    CHECK(v[4] == doctest::Approx(std::hypot(v[2], v[3])).epsilon(1e-15));
  }
}

TEST_CASE("scan-amplitude output is deterministic and thread-invariant") {
  const RunResult a = run_cli(kFig2Args, "TWISTBEAM_THREADS=1");
  const RunResult b = run_cli(kFig2Args, "TWISTBEAM_THREADS=4");
  const RunResult c = run_cli(kFig2Args, "TWISTBEAM_THREADS=1");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("scan-amplitude m_gamma = 1 counterpart peaks on axis") {
  const RunResult r = run_cli(
      "scan-amplitude --m-gamma 1 --lambda 1 --pitch 0.2 --nf 2 --lf 1 "
      "--mf 1 --b-max 3 --n-points 16");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 17);
  double peak = 0.0;
  for (size_t i = 1; i < lines.size(); ++i)
    peak = std::max(peak, split_csv(lines[i])[4]);
  CHECK(split_csv(lines[1])[4] == doctest::Approx(peak));
}

TEST_CASE("scan-amplitude single-point run shows the on-axis selection rule") {
  const RunResult r = run_cli(
      "scan-amplitude --m-gamma 0 --lambda 1 --pitch 0.2 --nf 2 --lf 1 "
      "--mf -1 --mf 0 --mf 1 --n-points 1");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  const auto m_minus = split_csv(lines[1]);
  const auto m_zero = split_csv(lines[2]);
  const auto m_plus = split_csv(lines[3]);
  CHECK(m_minus[4] == 0.0);
  CHECK(m_zero[4] > 0.0);
  CHECK(m_plus[4] == 0.0);
}

TEST_CASE("scan-amplitude rejects invalid quantum numbers with exit 2") {
  CHECK(run_cli("scan-amplitude --nf 2 --lf 2 --mf 0").exit_code == 2);
  CHECK(run_cli("scan-amplitude --nf 2 --lf 1 --mf 5").exit_code == 2);
  // missing required --mf is a usage error (CLI parser exit code)
  CHECK(run_cli("scan-amplitude --nf 2 --lf 1").exit_code != 0);
}

TEST_CASE("scan-amplitude reports quadrature failure with exit 3") {
  // hopelessly coarse rule for a high-lying orbital at a hard wavenumber
  const RunResult r = run_cli(
      "scan-amplitude --nf 4 --lf 3 --mf 3 --pitch 1.2 --k-scale 50 "
      "--n-radial 8 --n-angular 8 --n-points 2");
  CHECK(r.exit_code == 3);
}

TEST_CASE("scan-amplitude writes identical bytes to a file") {
  const auto tmp = std::filesystem::temp_directory_path() / "tb_scan_out.csv";
  const RunResult r =
      run_cli(kFig2Args + " --output " + tmp.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream in(tmp, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const RunResult direct = run_cli(kFig2Args);
  CHECK(ss.str() == direct.out);
  std::filesystem::remove(tmp);
}

TEST_CASE("poynting-map reports the on-axis negative flux interval") {
  const RunResult r = run_cli(
      "poynting-map --m-gamma -1 --lambda 1 --pitch 0.2 --n-points 256 "
      "--report-negative");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 257);
  CHECK(lines[0] == "rho_over_lambda,s_rho,s_phi,s_z");
  const auto axis = split_csv(lines[1]);
  CHECK(axis[1] == 0.0);
  CHECK(axis[3] < 0.0);
  // the first negative interval opens at rho = 0
  CHECK(r.out.find("# negative_s_z_interval 0 ") != std::string::npos);
}

TEST_CASE("poynting-map near-plane-wave mode reports no negative intervals") {
  const RunResult r = run_cli(
      "poynting-map --m-gamma 1 --lambda 1 --pitch 1e-3 --n-points 128 "
      "--report-negative");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# negative_s_z_intervals_over_lambda: 0") !=
        std::string::npos);
  for (size_t i = 1; i < data_lines(r.out).size(); ++i)
    CHECK(split_csv(data_lines(r.out)[i])[3] >= 0.0);
}

TEST_CASE("field-sample emits the three envelopes") {
  const RunResult r = run_cli(
      "field-sample --m-gamma 1 --lambda 1 --pitch 0.2 --rho 0.25 --phi 0.4 "
      "--z 0.1");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  const auto v = split_csv(lines[1]);
  REQUIRE(v.size() == 21);
  // E0 = i omega A0: ex_re = -omega * ax_im
  double omega = 2.7365072151588430e-03;
  for (int c = 0; c < 3; ++c) {
    const double a_re = v[3 + c], a_im = v[6 + c];
    const double e_re = v[9 + c], e_im = v[12 + c];
    CHECK(e_re == doctest::Approx(-omega * a_im).epsilon(1e-9));
    CHECK(e_im == doctest::Approx(omega * a_re).epsilon(1e-9));
  }
}

TEST_CASE("force emits decomposed JSON that satisfies the identity") {
  const RunResult r = run_cli(
      "force --m-gamma 1 --lambda 1 --pitch 0.2 --alpha-re 0.5 --alpha-im 1.0 "
      "--rho 0.6 --phi 0.3 --z 0.0 --decompose");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.contains("total"));
  REQUIRE(j.contains("gradient"));
  REQUIRE(j.contains("poynting"));
  REQUIRE(j.contains("spin_curl"));
  for (int i = 0; i < 3; ++i) {
    const double sum = j["gradient"][i].get<double>() +
                       j["poynting"][i].get<double>() +
                       j["spin_curl"][i].get<double>();
    CHECK(j["total"][i].get<double>() == doctest::Approx(sum).epsilon(1e-8));
  }
  // full-precision round trip: parse(dump(parse(s))) == parse(s) bitwise
  const json again = json::parse(j.dump());
  for (int i = 0; i < 3; ++i)
    CHECK(again["total"][i].get<double>() == j["total"][i].get<double>());
}

TEST_CASE("force rejects negative absorption with exit 2") {
  const RunResult r = run_cli(
      "force --m-gamma 1 --lambda 1 --alpha-re 0.5 --alpha-im -1.0 --rho 0.4");
  CHECK(r.exit_code == 2);
}

TEST_CASE("tractor-check passes for the default pitch set") {
  const RunResult r = run_cli("tractor-check --lambda 1");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j["m_gamma"].get<int>() == -1);
  REQUIRE(j["cases"].size() == 4);
  for (const auto& c : j["cases"]) {
    CHECK(c["s_z_on_axis"].get<double>() < 0.0);
    CHECK(c["f_z_on_axis"].get<double>() > 0.0);
    CHECK(c["pass"].get<bool>());
  }
}

TEST_CASE("verify exit-code contract") {
  const RunResult ok = run_cli("verify --suite basis");
  CHECK(ok.exit_code == 0);
  const json j = json::parse(ok.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j["suite"].get<std::string>() == "basis");
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("verify --suite dipole").exit_code == 0);
}

TEST_CASE("config file supplies defaults and flags win") {
  const auto tmp = std::filesystem::temp_directory_path() / "tb_config.json";
  {
    std::ofstream cfg(tmp);
    cfg << R"({"m-gamma": -1, "pitch": 0.5, "n-points": 16})";
  }
  // config drives m_gamma and n-points; the explicit flag overrides pitch
  const RunResult r = run_cli("poynting-map --config " + tmp.string() +
                              " --pitch 0.2 --report-negative");
  REQUIRE(r.exit_code == 0);
  CHECK(data_lines(r.out).size() == 17);
  CHECK(r.out.find("m_gamma = -1") != std::string::npos);
  CHECK(r.out.find("pitch = 0.2") != std::string::npos);
  // on-axis flux negative confirms m_gamma = -lambda took effect
  CHECK(split_csv(data_lines(r.out)[1])[3] < 0.0);
  std::filesystem::remove(tmp);
}

} // TEST_SUITE
