// lu-equiv: batch front-end for correlation-tensor extraction and
// local-unitary equivalence batteries on 2- and 3-partite density matrices.
//
// Exit codes: 0 consistent(-at-horizon), 1 distinguished, 2 inconclusive,
// 3 parse error, 4 state-invariant violation, 5 dimension mismatch.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "luq/equiv3.hpp"
#include "luq/lu_action.hpp"
#include "luq/serialize.hpp"

namespace {

constexpr int kExitParse = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitDims = 5;

struct LoadedState {
  std::string path;
  std::string hash;
  luq::DensityMatrix state;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw luq::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw luq::ParseError("cannot write '" + path + "'");
  out << bytes;
}

LoadedState load_state(const std::string& path) {
  const std::string bytes = slurp(path);
  const luq::json j = luq::json::parse(bytes);
  return {path, luq::fnv1a64_hex(bytes), luq::state_from_json(j)};
}

luq::json input_stanza(const LoadedState& s) {
  return luq::json{
      {"path", s.path}, {"fnv1a64", s.hash}, {"dims", s.state.dims()}};
}

void emit_report(const std::string& json_path, const luq::json& report) {
  if (!json_path.empty()) write_file(json_path, report.dump(2) + "\n");
}

// Mixes a random state toward the maximally mixed one far enough that any
// norm-preserving transformation of its correlation tensors stays positive
// semidefinite after reconstruction.
luq::DensityMatrix contracted_random_state(const std::vector<int>& dims,
                                           std::uint64_t seed) {
  const luq::DensityMatrix rho = luq::random_density(dims, seed);
  const luq::Index D = rho.dim();
  const luq::ComplexMatrix eye =
      luq::ComplexMatrix::Identity(D, D) / static_cast<double>(D);
  const double dist = (rho.matrix() - eye).norm();
  const double gamma = std::min(1.0, 0.9 / (static_cast<double>(D) * dist));
  luq::ComplexMatrix mixed = (1.0 - gamma) * eye + gamma * rho.matrix();
  return {dims, std::move(mixed)};
}

int cmd_extract(const std::string& in_path, const std::string& out_path) {
  const LoadedState s = load_state(in_path);
  const luq::TensorRep rep = luq::extract(s.state);
  write_file(out_path, luq::rep_to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_check2(const std::string& a_path, const std::string& b_path,
               int horizon, double tol, const std::string& json_path,
               bool full_sweep) {
  const LoadedState a = load_state(a_path);
  const LoadedState b = load_state(b_path);
  if (a.state.dims() != b.state.dims())
    throw luq::ShapeError("the two states live on different partitions");
  if (a.state.parties() != 2)
    throw luq::ShapeError("check2 needs two-party states");
  luq::CheckOptions opt;
  opt.threads = luq::thread_cap_from_env();
  opt.full_sweep = full_sweep;
  const luq::Rep2 ra = luq::rep2_from(luq::extract(a.state));
  const luq::Rep2 rb = luq::rep2_from(luq::extract(b.state));
  const bool qubits = a.state.dims() == std::vector<int>{2, 2};
  const luq::EquivalenceReport rep =
      qubits ? luq::check_lu_2qubit(ra, rb, horizon, tol, opt)
             : luq::check_quasi_lu_2(ra, rb, horizon, tol, opt);
  const int code = luq::exit_code(rep.verdict);
  luq::json out{{"schema_version", luq::kSchemaVersion},
                {"tool", "lu-equiv"},
                {"command", "check2"},
                {"inputs", {{"a", input_stanza(a)}, {"b", input_stanza(b)}}},
                {"config",
                 {{"horizon", horizon},
                  {"tol", tol},
                  {"threads", opt.threads},
                  {"full_sweep", full_sweep}}},
                {"verdict", luq::to_string(rep.verdict)},
                {"exit_code", code},
                {"report", luq::to_json(rep)}};
  emit_report(json_path, out);
  std::cout << "check2: " << luq::to_string(rep.verdict)
            << (rep.reason.empty() ? "" : " (" + rep.reason + ")") << "\n";
  return code;
}

int cmd_check3(const std::string& a_path, const std::string& b_path,
               int horizon, double tol, int battery,
               const std::string& json_path, bool full_sweep) {
  const LoadedState a = load_state(a_path);
  const LoadedState b = load_state(b_path);
  if (a.state.dims() != b.state.dims())
    throw luq::ShapeError("the two states live on different partitions");
  if (a.state.parties() != 3)
    throw luq::ShapeError("check3 needs three-party states");
  luq::CheckOptions opt;
  opt.threads = luq::thread_cap_from_env();
  opt.full_sweep = full_sweep;
  const luq::Rep3 ra = luq::rep3_from(luq::extract(a.state));
  const luq::Rep3 rb = luq::rep3_from(luq::extract(b.state));
  luq::ConditionLedger led =
      luq::check_quasi_lu_3(ra, rb, battery, horizon, tol, opt);
  if (a.state.dims() == std::vector<int>{2, 2, 2} &&
      led.verdict != luq::Verdict::distinguished)
    led = luq::qubit_lu_upgrade(ra, rb, std::move(led), tol);
  const int code = luq::exit_code(led.verdict);
  luq::json out{{"schema_version", luq::kSchemaVersion},
                {"tool", "lu-equiv"},
                {"command", "check3"},
                {"inputs", {{"a", input_stanza(a)}, {"b", input_stanza(b)}}},
                {"config",
                 {{"horizon", horizon},
                  {"tol", tol},
                  {"battery", battery},
                  {"threads", opt.threads},
                  {"full_sweep", full_sweep}}},
                {"verdict", luq::to_string(led.verdict)},
                {"exit_code", code},
                {"report", luq::to_json(led)}};
  emit_report(json_path, out);
  std::cout << "check3: " << luq::to_string(led.verdict)
            << (led.reason.empty() ? "" : " (" + led.reason + ")") << "\n";
  return code;
}

int cmd_gen_pair(const std::vector<int>& dims, std::uint64_t seed,
                 const std::string& mode, const std::string& out_a,
                 const std::string& out_b) {
  for (int d : dims)
    if (d < 2) throw luq::ShapeError("local dimensions must be >= 2");
  if (mode == "lu") {
    const luq::DensityMatrix a = luq::random_density(dims, seed);
    luq::LocalUnitaries u;
    u.dims = dims;
    for (std::size_t p = 0; p < dims.size(); ++p)
      u.us.push_back(luq::random_special_unitary(
          dims[p], seed * 1315423911ULL + 17 * (p + 1)));
    const luq::DensityMatrix b = luq::conjugate_local(a, u);
    write_file(out_a, luq::state_to_json(a).dump(2) + "\n");
    write_file(out_b, luq::state_to_json(b).dump(2) + "\n");
  } else if (mode == "independent") {
    const luq::DensityMatrix a = luq::random_density(dims, seed);
    const luq::DensityMatrix b =
        luq::random_density(dims, seed ^ 0x9e3779b97f4a7c15ULL);
    write_file(out_a, luq::state_to_json(a).dump(2) + "\n");
    write_file(out_b, luq::state_to_json(b).dump(2) + "\n");
  } else if (mode == "sign-flip") {
    if (dims.size() != 3)
      throw luq::ShapeError("sign-flip mode needs a three-party partition");
    const luq::DensityMatrix a = contracted_random_state(dims, seed);
    const luq::Rep3 ra = luq::rep3_from(luq::extract(a));
    // Per-party special orthogonal actions with two negated single-party
    // tensors; each complementary pair tensor picks up the matching sign, so
    // every norm and every battery identity still passes while the pair
    // determinants flip.
    const std::vector<int> dls = luq::deltas(dims);
    std::vector<luq::RealMatrix> o(3);
    for (int p = 0; p < 3; ++p)
      o[p] = luq::random_orthogonal(dls[p],
                                    seed * 2654435761ULL + 31 * (p + 1), true);
    const double alpha[3] = {-1.0, -1.0, 1.0};
    const luq::RealVector t1 = alpha[0] * (o[0] * ra.T1);
    const luq::RealVector t2 = alpha[1] * (o[1] * ra.T2);
    const luq::RealVector t3 = alpha[2] * (o[2] * ra.T3);
    const luq::RealMatrix t12 = alpha[2] * (o[0] * ra.T12 * o[1].transpose());
    const luq::RealMatrix t13 = alpha[1] * (o[0] * ra.T13 * o[2].transpose());
    const luq::RealMatrix t23 = alpha[0] * (o[1] * ra.T23 * o[2].transpose());
    luq::TensorRep rep;
    rep.dims = dims;
    rep.tensors.emplace(std::vector<int>{1}, luq::Hypermatrix(t1));
    rep.tensors.emplace(std::vector<int>{2}, luq::Hypermatrix(t2));
    rep.tensors.emplace(std::vector<int>{3}, luq::Hypermatrix(t3));
    rep.tensors.emplace(std::vector<int>{1, 2}, luq::Hypermatrix(t12));
    rep.tensors.emplace(std::vector<int>{1, 3}, luq::Hypermatrix(t13));
    rep.tensors.emplace(std::vector<int>{2, 3}, luq::Hypermatrix(t23));
    rep.tensors.emplace(std::vector<int>{1, 2, 3},
                        luq::multilinear_mult({o[0], o[1], o[2]}, ra.T123));
    const luq::DensityMatrix b = luq::reconstruct(rep);
    write_file(out_a, luq::state_to_json(a).dump(2) + "\n");
    write_file(out_b, luq::state_to_json(b).dump(2) + "\n");
  } else {
    throw luq::ParseError("mode must be lu, independent or sign-flip");
  }
  return 0;
}

int cmd_specht(const std::string& path, const std::string& criterion,
               int horizon, double tol, const std::string& json_path,
               bool full_sweep) {
  const std::string bytes = slurp(path);
  const luq::json j = luq::json::parse(bytes);
  luq::CheckOptions opt;
  opt.threads = luq::thread_cap_from_env();
  opt.full_sweep = full_sweep;

  auto matrices = [&](const char* name) {
    const auto it = j.find(name);
    if (it == j.end() || !it->is_array())
      throw luq::ParseError(std::string("missing matrix list '") + name + "'");
    std::vector<luq::RealMatrix> out;
    for (const auto& m : *it) out.push_back(luq::real_matrix_from_json(m));
    return out;
  };

  luq::IdentityReport rep;
  if (criterion == "specht") {
    rep = luq::specht_check(luq::real_matrix_from_json(j.at("a")),
                            luq::real_matrix_from_json(j.at("b")), horizon,
                            tol, opt);
  } else if (criterion == "jing") {
    rep = luq::jing_check(matrices("a"), matrices("b"), horizon, tol, opt);
  } else if (criterion == "futorny") {
    rep = luq::futorny_two_block_check(matrices("a1"), matrices("a2"),
                                       matrices("b1"), matrices("b2"), horizon,
                                       tol, opt);
  } else if (criterion == "quiver") {
    luq::Quiver q;
    q.vertex_count = j.at("vertices").get<int>();
    for (const auto& arrow : j.at("arrows"))
      q.arrows.emplace_back(arrow.at(0).get<int>(), arrow.at(1).get<int>());
    luq::QuiverMatrixRep ra, rb;
    ra.dims = j.at("dims").get<std::vector<int>>();
    rb.dims = ra.dims;
    ra.mats = matrices("a");
    rb.mats = matrices("b");
    rep = luq::quiver_cycle_check(q, ra, rb, horizon, tol, opt);
  } else {
    throw luq::ParseError("criterion must be specht, jing, futorny or quiver");
  }

  // An engine run that is clean below its ceiling is consistent at the
  // configured horizon, exactly like the check commands.
  const luq::Verdict verdict =
      rep.verdict == luq::IdentityReport::Verdict::distinguished
          ? luq::Verdict::distinguished
          : (rep.verdict == luq::IdentityReport::Verdict::consistent
                 ? luq::Verdict::consistent
                 : luq::Verdict::consistent_at_horizon);
  const int code = luq::exit_code(verdict);
  luq::json out{
      {"schema_version", luq::kSchemaVersion},
      {"tool", "lu-equiv"},
      {"command", "specht"},
      {"inputs", {{"file", path}, {"fnv1a64", luq::fnv1a64_hex(bytes)}}},
      {"config",
       {{"criterion", criterion},
        {"horizon", horizon},
        {"tol", tol},
        {"threads", opt.threads},
        {"full_sweep", full_sweep}}},
      {"verdict", luq::to_string(verdict)},
      {"exit_code", code},
      {"report", luq::to_json(rep)}};
  emit_report(json_path, out);
  std::cout << "specht[" << criterion << "]: " << luq::to_string(verdict)
            << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decides local-unitary / quasi-local-unitary equivalence of 2- and "
      "3-partite density matrices from their correlation tensors."};
  app.require_subcommand(1);

  std::string in_path, out_path, a_path, b_path, json_path, mode, criterion;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  int horizon = 6;
  int battery = 1;
  double tol = 1e-8;
  bool full_sweep = false;

  auto* extract =
      app.add_subcommand("extract", "Write a state's correlation tensors");
  extract->add_option("state", in_path, "input state JSON")->required();
  extract->add_option("out", out_path, "output tensors JSON")->required();

  auto* check2 = app.add_subcommand("check2", "Two-party decision battery");
  check2->add_option("a", a_path)->required();
  check2->add_option("b", b_path)->required();
  check2->add_option("--horizon", horizon, "max word length")
      ->capture_default_str();
  check2->add_option("--tol", tol, "relative tolerance")
      ->capture_default_str();
  check2->add_option("--json", json_path, "write the full report here");
  check2->add_flag("--full-sweep", full_sweep,
                   "scan past the first violation");

  auto* check3 = app.add_subcommand("check3", "Three-party decision battery");
  check3->add_option("a", a_path)->required();
  check3->add_option("b", b_path)->required();
  check3->add_option("--horizon", horizon)->capture_default_str();
  check3->add_option("--tol", tol)->capture_default_str();
  check3->add_option("--battery", battery, "battery version (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  check3->add_option("--json", json_path);
  check3->add_flag("--full-sweep", full_sweep);

  auto* gen = app.add_subcommand("gen-pair", "Generate a seeded test pair");
  gen->add_option("--dims", dims, "partition, e.g. 2,2,2")
      ->required()
      ->delimiter(',');
  gen->add_option("--seed", seed)->required();
  gen->add_option("--mode", mode, "lu | independent | sign-flip")->required();
  gen->add_option("out-a", a_path)->required();
  gen->add_option("out-b", b_path)->required();

  auto* specht = app.add_subcommand("specht", "Raw trace-identity criteria");
  specht->add_option("file", in_path, "matrices JSON")->required();
  specht->add_option("--criterion", criterion, "specht|jing|futorny|quiver")
      ->required();
  specht->add_option("--horizon", horizon)->capture_default_str();
  specht->add_option("--tol", tol)->capture_default_str();
  specht->add_option("--json", json_path);
  specht->add_flag("--full-sweep", full_sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) return cmd_extract(in_path, out_path);
    if (check2->parsed())
      return cmd_check2(a_path, b_path, horizon, tol, json_path, full_sweep);
    if (check3->parsed())
      return cmd_check3(a_path, b_path, horizon, tol, battery, json_path,
                        full_sweep);
    if (gen->parsed()) return cmd_gen_pair(dims, seed, mode, a_path, b_path);
    if (specht->parsed())
      return cmd_specht(in_path, criterion, horizon, tol, json_path,
                        full_sweep);
  } catch (const luq::InvalidState& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const luq::ShapeError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kExitDims;
  } catch (const luq::IndexError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kExitDims;
  } catch (const luq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const luq::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const luq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDims;
  }
  return 0;
}
