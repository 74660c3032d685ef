#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "luq/lu_action.hpp"
#include "luq/serialize.hpp"

using namespace luq;

namespace {

std::string workdir() {
  static std::string dir = [] {
    std::string d = "/tmp/lu_equiv_cli_test";
    const int rc = std::system(("rm -rf " + d + " && mkdir -p " + d).c_str());
    REQUIRE(rc == 0);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd =
      std::string(LU_EQUIV_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("gen-pair is deterministic per seed") {
  const std::string d = workdir();
  CHECK(run("gen-pair --dims 2,2 --seed 5 --mode lu " + d + "/a1.json " + d +
            "/b1.json") == 0);
  CHECK(run("gen-pair --dims 2,2 --seed 5 --mode lu " + d + "/a2.json " + d +
            "/b2.json") == 0);
  CHECK(slurp(d + "/a1.json") == slurp(d + "/a2.json"));
  CHECK(slurp(d + "/b1.json") == slurp(d + "/b2.json"));
  CHECK(run("gen-pair --dims 2,2 --seed 6 --mode lu " + d + "/a3.json " + d +
            "/b3.json") == 0);
  CHECK(slurp(d + "/a1.json") != slurp(d + "/a3.json"));
}

TEST_CASE("check2 pipelines: conjugated pairs exit 0, independent exit 1") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,2 --seed 11 --mode lu " + d + "/la.json " +
              d + "/lb.json") == 0);
  CHECK(run("check2 " + d + "/la.json " + d + "/lb.json --json " + d +
            "/rep_lu.json") == 0);
  const json lu = load_json(d + "/rep_lu.json");
  CHECK(lu["verdict"] == "consistent-at-horizon");
  CHECK(lu["exit_code"] == 0);
  CHECK(lu["report"]["lu_scope"] == true);
  CHECK(lu["report"]["certification"].get<std::string>().find(
            "not a proof") != std::string::npos);

  REQUIRE(run("gen-pair --dims 2,2 --seed 12 --mode independent " + d +
              "/ia.json " + d + "/ib.json") == 0);
  CHECK(run("check2 " + d + "/ia.json " + d + "/ib.json --json " + d +
            "/rep_ind.json") == 1);
  const json ind = load_json(d + "/rep_ind.json");
  CHECK(ind["verdict"] == "distinguished");
  CHECK(ind["exit_code"] == 1);
  CHECK_FALSE(ind["report"]["identities"]["first_violation"].is_null());
}

TEST_CASE("reports are deterministic and exit codes match the verdict") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,2 --seed 21 --mode lu " + d + "/da.json " +
              d + "/db.json") == 0);
  REQUIRE(run("check2 " + d + "/da.json " + d + "/db.json --json " + d +
              "/r1.json") == 0);
  REQUIRE(run("check2 " + d + "/da.json " + d + "/db.json --json " + d +
              "/r2.json") == 0);
  CHECK(slurp(d + "/r1.json") == slurp(d + "/r2.json"));
  const json r = load_json(d + "/r1.json");
  CHECK(r["exit_code"].get<int>() == 0);
  CHECK(r["inputs"]["a"]["fnv1a64"].get<std::string>().size() == 16);
}

TEST_CASE("a thread cap from the environment leaves the report unchanged") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,2 --seed 22 --mode independent " + d +
              "/ta.json " + d + "/tb.json") == 0);
  REQUIRE(run("check2 " + d + "/ta.json " + d + "/tb.json --json " + d +
              "/t_seq.json") == 1);
  const std::string cmd = std::string("LU_EQUIV_THREADS=4 ") + LU_EQUIV_BIN +
                          " check2 " + d + "/ta.json " + d + "/tb.json" +
                          " --json " + d + "/t_par.json >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 1);
  const json seq = load_json(d + "/t_seq.json");
  const json par = load_json(d + "/t_par.json");
  CHECK(par["config"]["threads"] == 4);
  CHECK(seq["report"] == par["report"]);
  CHECK(seq["verdict"] == par["verdict"]);
}

TEST_CASE("check3 on sign-flip pairs records the determinant denial") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,2,2 --seed 31 --mode sign-flip " + d +
              "/sa.json " + d + "/sb.json") == 0);
  const int code = run("check3 " + d + "/sa.json " + d + "/sb.json --horizon 4 --json " +
                       d + "/rep_sf.json");
  const json rep = load_json(d + "/rep_sf.json");
  CHECK(code == rep["exit_code"].get<int>());
  for (const auto& n : rep["report"]["screen"]) CHECK(n["pass"] == true);
  CHECK(rep["report"]["identities"]["verdict"] != "distinguished");
  CHECK(rep["report"]["qubit_upgrade"]["status"] == "denied");
  int mismatched = 0;
  for (const auto& dchk : rep["report"]["qubit_upgrade"]["dets"])
    if (dchk["equal"] == false && dchk["degenerate"] == false) ++mismatched;
  CHECK(mismatched == 2);
}

TEST_CASE("check3 on conjugated pairs: clean sub-checks, LU upgrade granted") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,2,2 --seed 41 --mode lu " + d + "/ca.json " +
              d + "/cb.json") == 0);
  run("check3 " + d + "/ca.json " + d + "/cb.json --horizon 4 --json " + d +
      "/rep_c3.json");
  const json rep = load_json(d + "/rep_c3.json");
  CHECK(rep["verdict"] != "distinguished");
  for (const auto& n : rep["report"]["screen"]) CHECK(n["pass"] == true);
  CHECK(rep["report"]["qubit_upgrade"]["status"] == "granted");
  CHECK(rep["report"]["lu_scope"] == true);
  CHECK(rep["report"]["battery_admissible"] == false);

  REQUIRE(run("gen-pair --dims 2,2,2 --seed 42 --mode independent " + d +
              "/ea.json " + d + "/eb.json") == 0);
  CHECK(run("check3 " + d + "/ea.json " + d + "/eb.json --horizon 4") == 1);
}

TEST_CASE("extract output re-ingests and reconstructs the state") {
  const std::string d = workdir();
  REQUIRE(run("gen-pair --dims 2,3 --seed 51 --mode independent " + d +
              "/xa.json " + d + "/xb.json") == 0);
  CHECK(run("extract " + d + "/xa.json " + d + "/xrep.json") == 0);
  const DensityMatrix rho = state_from_json(load_json(d + "/xa.json"));
  const TensorRep rep = rep_from_json(load_json(d + "/xrep.json"));
  const DensityMatrix back = reconstruct(rep);
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("extract of the maximally mixed state writes zero tensors") {
  const std::string d = workdir();
  const DensityMatrix mixed({2, 2}, ComplexMatrix::Identity(4, 4) / 4.0);
  spit(d + "/mixed.json", state_to_json(mixed).dump());
  REQUIRE(run("extract " + d + "/mixed.json " + d + "/mixed_rep.json") == 0);
  const TensorRep rep = rep_from_json(load_json(d + "/mixed_rep.json"));
  for (const auto& [subset, t] : rep.tensors)
    CHECK(t.data().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("extract of a computational ground state matches hand values") {
  const std::string d = workdir();
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  spit(d + "/ground.json", state_to_json(DensityMatrix({2, 2}, m)).dump());
  REQUIRE(run("extract " + d + "/ground.json " + d + "/ground_rep.json") == 0);
  const TensorRep rep = rep_from_json(load_json(d + "/ground_rep.json"));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(rep.at({1}).as_vector()[2] == doctest::Approx(s).epsilon(1e-12));
  CHECK(rep.at({2}).as_vector()[2] == doctest::Approx(s).epsilon(1e-12));
  CHECK(rep.at({1, 2}).as_matrix()(2, 2) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.at({1, 2}).as_matrix().cwiseAbs().sum() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("error exit codes: parse 3, invariant 4, dimensions 5") {
  const std::string d = workdir();
  spit(d + "/broken.json", "{ not json");
  CHECK(run("extract " + d + "/broken.json " + d + "/out.json") == 3);

  json bad = state_to_json(
      DensityMatrix({2, 2}, ComplexMatrix::Identity(4, 4) / 4.0));
  bad["matrix"][0][1] = json::array({0.25, 0.0});  // hermiticity broken
  spit(d + "/badstate.json", bad.dump());
  CHECK(run("extract " + d + "/badstate.json " + d + "/out.json") == 4);

  REQUIRE(run("gen-pair --dims 2,2 --seed 61 --mode lu " + d + "/ya.json " +
              d + "/yb.json") == 0);
  REQUIRE(run("gen-pair --dims 2,3 --seed 61 --mode lu " + d + "/za.json " +
              d + "/zb.json") == 0);
  CHECK(run("check2 " + d + "/ya.json " + d + "/za.json") == 5);
  CHECK(run("check3 " + d + "/ya.json " + d + "/yb.json") == 5);
  CHECK(run("gen-pair --dims 2,2 --seed 62 --mode sign-flip " + d +
            "/wa.json " + d + "/wb.json") == 5);
}

TEST_CASE("specht subcommand covers all four criteria") {
  const std::string d = workdir();
  const RealMatrix a =
      (RealMatrix(3, 3) << 1, 2, 0, -1, 0.5, 3, 0, 1, -2).finished();
  const RealMatrix o = random_orthogonal(3, 3, false);
  const RealMatrix conj = o.transpose() * a * o;
  RealMatrix perturbed = a;
  perturbed(0, 0) += 1.0;

  spit(d + "/sp_ok.json",
       json{{"a", to_json(a)}, {"b", to_json(conj)}}.dump());
  CHECK(run("specht " + d + "/sp_ok.json --criterion specht --horizon 8") ==
        0);
  spit(d + "/sp_bad.json",
       json{{"a", to_json(a)}, {"b", to_json(perturbed)}}.dump());
  CHECK(run("specht " + d + "/sp_bad.json --criterion specht --horizon 8") ==
        1);

  spit(d + "/jing.json",
       json{{"a", json::array({to_json(a), to_json(perturbed)})},
            {"b", json::array({to_json(a), to_json(perturbed)})}}
           .dump());
  CHECK(run("specht " + d + "/jing.json --criterion jing --horizon 4") == 0);

  spit(d + "/fut.json",
       json{{"a1", json::array({to_json(a)})},
            {"a2", json::array({to_json(perturbed)})},
            {"b1", json::array({to_json(a)})},
            {"b2", json::array({to_json(a)})}}
           .dump());
  CHECK(run("specht " + d + "/fut.json --criterion futorny --horizon 4") == 1);

  spit(d + "/quiver.json",
       json{{"vertices", 1},
            {"arrows", json::array({json::array({0, 0})})},
            {"dims", json::array({3})},
            {"a", json::array({to_json(a)})},
            {"b", json::array({to_json(perturbed)})}}
           .dump());
  const int qcode =
      run("specht " + d + "/quiver.json --criterion quiver --horizon 6");
  CHECK(qcode == 1);

  CHECK(run("specht " + d + "/quiver.json --criterion nosuch") == 3);
  spit(d + "/missing.json", json{{"a", to_json(a)}}.dump());
  CHECK(run("specht " + d + "/missing.json --criterion specht") == 3);
}
