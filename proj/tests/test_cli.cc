#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kimpa/config.h"
#include "kimpa/errors.h"
#include "kimpa/results_io.h"

using namespace kimpa;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(KIMPA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
  const auto path = std::filesystem::temp_directory_path() / "kimpa_cli_capture.txt";
  const std::string cmd = std::string(KIMPA_CLI_PATH) + " " + args + " > " + path.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  return read_text_file(path.string());
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig a = parse_config("command = synth\n");
  CHECK(a.command == Command::Synth);
  CHECK(a.prototype == "getsinger-17dB");

  const RunConfig b = parse_config("design = paper-device\n");
  const DesignSpec d = build_design(b);
  CHECK(d.line_quarter.z_c == 80.0);
  CHECK(d.line_half.z_c == 30.0);
  REQUIRE(d.line_ki_quarter.has_value());
  CHECK(d.line_ki_quarter->z_c == 180.0);
  CHECK(d.c_shunt == doctest::Approx(330e-15).epsilon(1e-15));
  CHECK(std::abs(resonator_impedance(d, 0.0) - 56.0) < 1.0);

  const RunConfig c = parse_config("# bias point\ni_dc = 0.57 mA\nfp = 16.9GHz  # pump\nspan = 7.9GHz:8.9GHz:1MHz\n");
  CHECK(c.number("i_dc", 0) == doctest::Approx(0.57e-3).epsilon(1e-15));
  CHECK(c.number("fp", 0) == doctest::Approx(16.9e9).epsilon(1e-15));
  const auto span = c.span("span", {});
  REQUIRE(span.size() == 3);
  CHECK(span[2] == doctest::Approx(1e6).epsilon(1e-15));

  try {
    parse_config("command = synth\nz_nr = -5 ohm\n");
    FAIL("expected validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("z_nr") != std::string::npos);
  }
  try {
    parse_config("command = synth\n\nbogus_key = 3\n");
    FAIL("expected validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
  try {
    parse_config("fp = 16.9 furlongs\n");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("no equals sign here\n"), Error);
}

TEST_CASE("result emission") {
  Table empty{{"fp_hz", "idc_a", "bandwidth_hz", "peaks", "ripple_db"}, {}};
  std::ostringstream os;
  emit_results(empty, OutputFormat::Csv, os);
  CHECK(os.str() == "fp_hz,idc_a,bandwidth_hz,peaks,ripple_db\n");

  GainProfile p;
  p.omega = {kTwoPi * 8e9};
  p.s11 = {Complex(3.0, 4.0)};
  p.gain_db = {20 * std::log10(5.0)};
  p.oscillation = {0};
  const Table t = simulate_table(p);
  CHECK(t.columns == std::vector<std::string>{"freq_hz", "re_s11", "im_s11", "gain_db"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][0] == doctest::Approx(8e9).epsilon(1e-15));

  Table m{{"fp_hz", "idc_a", "bandwidth_hz", "peaks", "ripple_db"}, {}};
  for (int k = 0; k < 20; ++k)
    m.rows.push_back({16.7e9 + k * 1.234567e6, 1e-4 * k / 3.0, 4.2e8 / (k + 1), double(k % 3),
                      std::sqrt(double(k))});
  std::ostringstream out;
  emit_results(m, OutputFormat::Csv, out);
  const Table back = parse_csv(out.str());
  CHECK(back.columns == m.columns);
  REQUIRE(back.rows.size() == m.rows.size());
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t j = 0; j < m.columns.size(); ++j)
      CHECK(std::stod(format_number(back.rows[i][j])) == std::stod(format_number(m.rows[i][j])));

  std::ostringstream js;
  emit_results(m, OutputFormat::Structured, js);
  CHECK(js.str().find("\"bandwidth_hz\"") != std::string::npos);
  CHECK_THROWS_AS(write_results(m, OutputFormat::Csv, "/nonexistent-dir/x.csv"), Error);
}

TEST_CASE("command-line exit codes and determinism") {
  CHECK(run("synth --preset appendixB-worked") == 0);
  CHECK(run("synth --set z_nr=-5ohm") == 1);
  CHECK(run("synth --set bogus=1") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("synth --config /nonexistent/config.txt") == 3);
  CHECK(run("fit-ki --input /nonexistent/data.csv") == 3);

  const auto dir = std::filesystem::temp_directory_path();
  const auto flat = dir / "kimpa_flat_qubit.csv";
  {
    std::ofstream f(flat);
    f << "detuning_hz,p_vna_dbm,re_s21,im_s21\n";
    for (int p : {-90, -80})
      for (int k = -5; k <= 5; ++k) f << k * 1e6 << "," << p << ",1,0\n";
  }
  CHECK(run("fit-qubit --set f_q=8.4GHz --input " + flat.string()) == 2);

  const std::string a = capture("synth --preset appendixB-worked");
  const std::string b = capture("synth --preset appendixB-worked");
  CHECK(a == b);
  CHECK(a.rfind("z_ref,z_quarter,z_parallel,z_half,z_nr_primed,r_nr_primed\n", 0) == 0);
}
