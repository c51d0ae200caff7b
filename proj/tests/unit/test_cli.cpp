#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "pilp/cli.hpp"
#include "pilp/io.hpp"
#include "pilp/oracle.hpp"
#include "support.hpp"

namespace pilp {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string program(const std::string& name) { return (fs::path(PILP_PROGRAMS_DIR) / (name + ".json")).string(); }

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pilp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    io::write_file(dir_ / name, text);
    return (dir_ / name).string();
  }

  fs::path dir_;
};

TEST(Cli, Sha256) {
  EXPECT_EQ(cli::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, EvalHuman) {
  const Outcome r = run({"eval", program("simplex"), "--t", "5", "--ell-max", "2"});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "t=5 count=21 f1=5 f2=4\n");
  const Outcome inf = run({"eval", program("infeasible"), "--t", "3"});
  EXPECT_EQ(inf.out, "t=3 count=0 f1=-inf\n");
  const Outcome table = run({"eval", program("floor"), "--table", "4:6"});
  EXPECT_EQ(table.out, "t count f1\n4 3 2\n5 3 2\n6 4 3\n");
}

TEST(Cli, InferHuman) {
  const Outcome fl = run({"infer", program("floor")});
  EXPECT_EQ(fl.status, cli::kOk);
  EXPECT_EQ(fl.out.substr(0, fl.out.find('\n')), "d=2; P0=t/2; P1=(t-1)/2");
  for (const std::string mode : {"direct", "constructive"}) {
    const Outcome s = run({"infer", program("simplex"), "--ell", "3", "--mode", mode});
    EXPECT_EQ(s.status, cli::kOk) << s.err;
    EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "d=1; P=t-1") << mode;
  }
  const Outcome count = run({"infer", program("square"), "--sampler", "count"});
  EXPECT_EQ(count.out.substr(0, count.out.find('\n')), "d=1; P=t^2+2*t+1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).status, cli::kParseError);
  EXPECT_EQ(run({"eval", program("simplex"), "--ell-max", "0", "--t", "1"}).status, cli::kParseError);
  EXPECT_EQ(run({"eval", "/nonexistent/p.json", "--t", "1"}).status, cli::kParseError);
  EXPECT_EQ(run({"infer", program("simplex"), "--sampler", "diagonal", "--d-max", "12", "--deg-max", "4", "--t-cap", "5000"}).status,
            cli::kNoFit);
  EXPECT_EQ(run({"decompose", program("simplex"), "--mode", "digits"}).status, cli::kIncompatibleForm);
  EXPECT_EQ(run({"decompose", program("digits"), "--mode", "slack"}).status, cli::kIncompatibleForm);
  EXPECT_EQ(run({"--help"}).status, cli::kOk);
}

TEST_F(Scratch, ParseAndUnboundedErrors) {
  const std::string bad = write("bad.json", "{\"form\": \"canonical\", \"n\":");
  const Outcome r = run({"eval", bad, "--t", "1"});
  EXPECT_EQ(r.status, cli::kParseError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  // x >= 0, -x <= t: the relaxation is unbounded
  const std::string ray = write("ray.json", R"({"form":"canonical","n":1,"m":1,"A":[[[-1]]],"b":[[0,1]],"c":[[1]],"bounded":true})");
  EXPECT_EQ(run({"eval", ray, "--t", "3"}).status, cli::kUnbounded);
  const Outcome s = run({"--format", "structured", "eval", ray, "--t", "3"});
  EXPECT_EQ(s.status, cli::kUnbounded);
  const io::Json doc = io::Json::parse(s.out);
  EXPECT_EQ(doc["result"]["error"]["kind"], "unbounded");
  EXPECT_EQ(doc["manifest"]["exit_status"], cli::kUnbounded);
}

TEST(Cli, StructuredIsDeterministic) {
  const std::vector<std::string> args{"--format", "structured", "infer", program("floor")};
  const Outcome a = run(args);
  const Outcome b = run(args);
  EXPECT_EQ(a.out, b.out);
  const io::Json doc = io::Json::parse(a.out);
  EXPECT_EQ(doc["schema"], cli::kSchema);
  EXPECT_EQ(doc["command"], "infer");
  EXPECT_EQ(doc["manifest"]["input_sha256"], cli::sha256_hex(io::read_file(program("floor"))));
  EXPECT_EQ(doc["manifest"]["exit_status"], 0);
  const QuasiPolynomial qp = io::quasi_polynomial_from_json(doc["result"]["certificate"]["qp"]);
  EXPECT_EQ(to_string(qp), "d=2; P0=t/2; P1=(t-1)/2");
}

TEST_F(Scratch, DecomposeDigitsRoundTrip) {
  const Outcome r = run({"decompose", program("digits"), "--mode", "digits", "--r", "2", "--verify", "10,11,12,13", "--out",
                     dir_.string()});
  ASSERT_EQ(r.status, cli::kOk) << r.out << r.err;
  EXPECT_EQ(r.out.find("fail"), std::string::npos);
  const io::Json manifest = io::Json::parse(io::read_file(dir_ / "manifest.json"));
  ASSERT_EQ(manifest["parts"].size(), 2u);
  const Pilp src = io::load_pilp(program("digits"));
  for (const auto& meta : manifest["parts"]) {
    const std::string text = io::read_file(dir_ / meta["file"].get<std::string>());
    EXPECT_EQ(meta["sha256"], cli::sha256_hex(text));
    const Pilp part = io::parse_pilp(text);
    EXPECT_EQ(part.form, Form::kReducedCanonical);
  }
  // the part counts add up to the t points inside [0, t^2)^2; (0, t^2 + 1) is outside
  for (int t = 10; t <= 13; ++t) {
    Integer total = 0;
    for (const auto& meta : manifest["parts"]) {
      total += count_lattice_points(io::load_pilp(dir_ / meta["file"].get<std::string>()), t);
    }
    EXPECT_EQ(total + 1, count_lattice_points(src, t));
    EXPECT_EQ(total, t);
  }
}

TEST(Cli, DecomposeLayersAndProject) {
  const Outcome layers = run({"decompose", program("simplex"), "--mode", "layers", "--ell0", "2", "--verify", "20,21"});
  EXPECT_EQ(layers.status, cli::kOk) << layers.out;
  EXPECT_NE(layers.out.find("c0=3"), std::string::npos);
  const Outcome proj = run({"decompose", program("hyperplane"), "--mode", "project", "--verify", "10,11,12"});
  EXPECT_EQ(proj.status, cli::kOk) << proj.out;
  EXPECT_EQ(proj.out.substr(0, proj.out.find('\n')), "project: residue t = 0 (mod 2) z=1 Z=-2*t-2");
  EXPECT_EQ(proj.out.find("fail"), std::string::npos);
}

TEST(Cli, Hull) {
  const Outcome tri = run({"hull", program("triangle"), "--verify"});
  EXPECT_EQ(tri.status, cli::kOk) << tri.out;
  EXPECT_EQ(tri.out.substr(0, 4), "d=2 ");
  EXPECT_NE(tri.out.find("verify: 20 fresh t pass"), std::string::npos) << tri.out;
}

TEST_F(Scratch, VerifyCertificate) {
  const Outcome inferred = run({"--format", "structured", "infer", program("halving")});
  ASSERT_EQ(inferred.status, cli::kOk);
  const std::string cert = write("cert.json", inferred.out);
  const Outcome ok = run({"verify", program("halving"), "--cert", cert, "--range", "100:160"});
  EXPECT_EQ(ok.status, cli::kOk) << ok.out;
  EXPECT_NE(ok.out.find("61 values, 0 mismatches"), std::string::npos) << ok.out;
  // the floor certificate does not describe f_2 of the simplex
  const Outcome wrong = run({"verify", program("simplex"), "--cert", cert, "--range", "100:110"});
  EXPECT_EQ(wrong.status, cli::kFailure);
}

}  // namespace
}  // namespace pilp
