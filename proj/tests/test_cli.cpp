#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "dcq/io.hpp"
#include "dcq/random.hpp"

using namespace dcq;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dcq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dcq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const io::json& j) const {
    io::write_file(path(name), j.dump());
    return path(name);
  }

  fs::path dir_;
};

std::size_t count_lines(const std::string& file) {
  std::ifstream in(file);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_F(Cli, WalkWritesOneSnapshotPerStep) {
  const Result r = invoke({"walk", "--mass", "1", "--sites", "128", "--steps", "64", "--out",
                           path("t.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(path("t.csv")), 1u + 65u * 128u);
  EXPECT_NE(r.out.find("final dual norm: 1"), std::string::npos) << r.out;
}

TEST_F(Cli, WalkZeroStepsEchoesInitialCondition) {
  const Result r = invoke({"walk", "--steps", "0", "--sites", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0,2,1,0,0,0,0,0,0,0"), std::string::npos) << r.out;
}

TEST_F(Cli, WalkRejectsSingleSite) {
  EXPECT_EQ(invoke({"walk", "--sites", "1"}).code, 2);
  EXPECT_EQ(invoke({"walk", "--mass", "nan"}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
}

TEST_F(Cli, CheckUnitaryPassAndFail) {
  const std::string gate = write("gate.json", io::operator_to_json(dirac_gate(1.0)));
  Result r = invoke({"check", "unitary", "--in", gate});
  EXPECT_EQ(r.code, 0) << r.err;
  io::json j = io::parse(r.out);
  EXPECT_EQ(j["check"], "unitary");
  EXPECT_EQ(j["pass"], true);

  const std::string two = write("two.json", io::operator_to_json(DualComplex(2.0) * DCMatrix::identity(2)));
  r = invoke({"check", "unitary", "--in", two});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse(r.out)["pass"], false);
}

TEST_F(Cli, CheckHermitianSpectrumSemipositive) {
  Rng rng(81);
  const std::string h = write("h.json", io::operator_to_json(random_dual_hermitian(rng, 3), "operator"));
  EXPECT_EQ(invoke({"check", "hermitian", "--in", h}).code, 0);
  EXPECT_EQ(invoke({"check", "spectrum", "--in", h}).code, 0);
  const std::string u = write("u.json", io::operator_to_json(random_dual_unitary(rng, 4)));
  EXPECT_EQ(invoke({"check", "spectrum", "--in", u}).code, 0);

  const DCMatrix m(random_complex_matrix(rng, 3, 3), random_complex_matrix(rng, 3, 3));
  const std::string e = write("e.json", io::operator_to_json(adjoint(m) * m, "operator"));
  EXPECT_EQ(invoke({"check", "semipositive", "--in", e, "--seed", "5"}).code, 0);
  const std::string neg = write("neg.json", io::operator_to_json(DualComplex(-1.0) * DCMatrix::identity(2), "operator"));
  EXPECT_EQ(invoke({"check", "semipositive", "--in", neg}).code, 1);
}

TEST_F(Cli, CheckCovariance) {
  Result r = invoke({"check", "covariance", "--alpha", "2", "--beta", "3", "--mode", "dual"});
  EXPECT_EQ(r.code, 0) << r.err;
  io::json j = io::parse(r.out);
  EXPECT_LT(j["max_discrepancy"].get<double>(), 1e-12);
  EXPECT_EQ(j["alpha"], 2);
  EXPECT_TRUE(j["fitted_order"].is_null());

  r = invoke({"check", "covariance", "--alpha", "3", "--beta", "2", "--mode", "corrected", "--h", "0.01"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(io::parse(r.out)["fitted_order"].get<double>(), 2.0, 0.2);
}

TEST_F(Cli, CheckReportsParseErrorPosition) {
  io::write_file(path("bad.json"), "{\n \"kind\": \"unitary\",\n \"rows\": 2,,\n}");
  const Result r = invoke({"check", "unitary", "--in", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, TranslateCorrectDiracGate) {
  const std::string gate = write("gate.json", io::operator_to_json(dirac_gate(1.0)));
  Result r = invoke({"translate", "--correct", "--h", "0.01", "--in", gate, "--out", path("c.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const DCMatrix c = io::operator_from_json(io::read_file(path("c.json")));
  EXPECT_NEAR(std::abs(c(0, 0).sig() - Complex{0.0, -std::sin(0.01)}), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(c(0, 1).sig() - std::cos(0.01)), 0.0, 1e-10);

  r = invoke({"translate", "--correct", "--h", "0", "--in", gate});
  EXPECT_EQ(io::operator_from_json(io::parse(r.out)).sig(), dirac_gate(1.0).sig());
}

TEST_F(Cli, TranslateQubitMeasurement) {
  const Result r = invoke({"translate", "--correct", "--h", "0.1", "--in",
                           std::string(DCQ_DATA_DIR) + "/qubit_measurement.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const io::MeasurementFile f = io::measurement_from_json(io::parse(r.out));
  const double pi = std::numbers::pi;
  const Complex z = std::polar(1.0, pi / 10);
  EXPECT_LT(std::abs(f.operators[0](0, 0).sig() - z * (std::cos(pi / 10) + 2.0) / 3.0), 1e-10);
}

TEST_F(Cli, TranslateExtendFamilies) {
  const double m = 0.9;
  io::UnitaryFamilyFile u{{-1e-4, 0.0, 1e-4}, {}};
  for (double h : u.h) u.samples.push_back(corrected_dirac_gate(m, h));
  Result r = invoke({"translate", "--extend", "--in", write("fam.json", io::unitary_family_to_json(u))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(max_abs_diff(io::operator_from_json(io::parse(r.out)), dirac_gate(m)), 1e-8);

  // An incomplete family surfaces the module error.
  io::MeasurementFamilyFile bad{{0.0, 0.1}, {{0.5 * CMatrix::Identity(2, 2)}, {0.5 * CMatrix::Identity(2, 2)}}, {}};
  r = invoke({"translate", "--extend", "--in", write("bad.json", io::measurement_family_to_json(bad))});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("IncompleteFamily"), std::string::npos) << r.err;

  EXPECT_EQ(invoke({"translate", "--in", path("fam.json")}).code, 2);
}

TEST_F(Cli, ConvergenceSweepIsDeterministicAcrossJobs) {
  const Result one = invoke({"convergence", "--h-list", "0.04,0.02,0.01", "--jobs", "1"});
  const Result three = invoke({"convergence", "--h-list", "0.04,0.02,0.01", "--jobs", "3"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, three.out);
  const io::json j = io::parse(one.out);
  for (const auto& order : j["orders"]) EXPECT_NEAR(order.get<double>(), 1.0, 0.2);

  const Result c = invoke({"convergence", "--target", "correction", "--h-list", "0.01,0.005"});
  EXPECT_NEAR(io::parse(c.out)["orders"][0].get<double>(), 2.0, 0.1);
}

TEST_F(Cli, ToleranceFlagsValidated) {
  const std::string gate = write("gate.json", io::operator_to_json(dirac_gate(1.0)));
  EXPECT_EQ(invoke({"check", "unitary", "--in", gate, "--rtol", "-1"}).code, 2);
  EXPECT_EQ(invoke({"check", "unitary", "--in", gate, "--rtol", "1e-3", "--tau", "1e-10"}).code, 0);
}
