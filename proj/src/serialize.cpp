#include "luq/serialize.hpp"

#include <cstdio>
#include <functional>
#include <utility>
#include <vector>

namespace luq {

namespace {

json nested_from(const Hypermatrix& t, int mode, std::vector<Index>& idx) {
  json out = json::array();
  for (Index i = 0; i < t.dims()[mode]; ++i) {
    idx[mode] = i;
    if (mode + 1 == t.order())
      out.push_back(t.at(idx));
    else
      out.push_back(nested_from(t, mode + 1, idx));
  }
  return out;
}

void nested_dims(const json& j, std::vector<Index>& dims) {
  if (!j.is_array() || j.empty())
    throw ParseError("tensor arrays must be nonempty");
  dims.push_back(static_cast<Index>(j.size()));
  if (j.front().is_array()) nested_dims(j.front(), dims);
}

void nested_fill(const json& j, Hypermatrix& t, int mode,
                 std::vector<Index>& idx) {
  if (!j.is_array() || static_cast<Index>(j.size()) != t.dims()[mode])
    throw ParseError("ragged tensor array");
  for (Index i = 0; i < t.dims()[mode]; ++i) {
    idx[mode] = i;
    const json& cell = j[static_cast<std::size_t>(i)];
    if (mode + 1 == t.order()) {
      if (!cell.is_number()) throw ParseError("tensor entries must be numbers");
      t.at(idx) = cell.get<double>();
    } else {
      nested_fill(cell, t, mode + 1, idx);
    }
  }
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<int> dims_from(const json& j) {
  const json& d = field(j, "dims");
  if (!d.is_array() || d.empty())
    throw ParseError("'dims' must be a nonempty array");
  std::vector<int> dims;
  for (const auto& v : d) {
    if (!v.is_number_integer()) throw ParseError("'dims' entries must be integers");
    dims.push_back(v.get<int>());
  }
  return dims;
}

void check_schema(const json& j) {
  const json& v = field(j, "schema_version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    throw ParseError("unsupported schema_version");
}

json to_json(const NormCheck& n) {
  return json{{"label", n.label}, {"a", n.a}, {"b", n.b}, {"pass", n.pass}};
}

}  // namespace

json to_json(const Hypermatrix& t) {
  std::vector<Index> idx(static_cast<std::size_t>(t.order()), 0);
  return nested_from(t, 0, idx);
}

Hypermatrix hypermatrix_from_json(const json& j) {
  std::vector<Index> dims;
  nested_dims(j, dims);
  Hypermatrix t{dims};
  std::vector<Index> idx(dims.size(), 0);
  nested_fill(j, t, 0, idx);
  return t;
}

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index jx = 0; jx < m.cols(); ++jx) row.push_back(m(i, jx));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError("matrices must be nonempty arrays of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.front().size());
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("ragged matrix rows");
    for (Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) throw ParseError("matrix entries must be numbers");
      m(i, c) = cell.get<double>();
    }
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  const ComplexMatrix& m = rho.matrix();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return json{{"schema_version", kSchemaVersion},
              {"dims", rho.dims()},
              {"matrix", std::move(rows)}};
}

DensityMatrix state_from_json(const json& j) {
  check_schema(j);
  const std::vector<int> dims = dims_from(j);
  Index D = 1;
  for (int d : dims) {
    if (d < 2) throw ParseError("local dimensions must be >= 2");
    D *= d;
  }
  const json& rows = field(j, "matrix");
  if (!rows.is_array() || static_cast<Index>(rows.size()) != D)
    throw ParseError("'matrix' must have one row per basis state");
  ComplexMatrix m(D, D);
  for (Index i = 0; i < D; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != D)
      throw ParseError("'matrix' rows must all have length " +
                       std::to_string(D));
    for (Index c = 0; c < D; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number())
        throw ParseError("matrix entries must be [re, im] pairs");
      m(i, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return {dims, std::move(m)};
}

json rep_to_json(const TensorRep& rep) {
  json tensors = json::object();
  for (const auto& [subset, tensor] : rep.tensors) {
    std::string label = "T";
    for (int p : subset) label += std::to_string(p);
    tensors[label] = to_json(tensor);
  }
  return json{{"schema_version", kSchemaVersion},
              {"dims", rep.dims},
              {"tensors", std::move(tensors)}};
}

TensorRep rep_from_json(const json& j) {
  check_schema(j);
  TensorRep rep;
  rep.dims = dims_from(j);
  for (int d : rep.dims)
    if (d < 2) throw ParseError("local dimensions must be >= 2");
  const json& tensors = field(j, "tensors");
  if (!tensors.is_object()) throw ParseError("'tensors' must be an object");
  for (const auto& subset : party_subsets(rep.parties())) {
    std::string label = "T";
    for (int p : subset) label += std::to_string(p);
    auto it = tensors.find(label);
    if (it == tensors.end())
      throw ParseError("missing tensor '" + label + "'");
    rep.tensors.emplace(subset, hypermatrix_from_json(*it));
  }
  return rep;
}

json to_json(const IdentityReport& r) {
  json out{{"verdict", to_string(r.verdict)},
           {"horizon", r.horizon},
           {"ceiling", r.ceiling},
           {"ceiling_note", r.ceiling_note},
           {"words_checked", r.words_checked},
           {"max_residual", r.max_residual}};
  if (r.first_violation) {
    out["first_violation"] = json{{"word", r.first_violation->word},
                                  {"lhs", r.first_violation->lhs},
                                  {"rhs", r.first_violation->rhs},
                                  {"residual", r.first_violation->residual}};
  } else {
    out["first_violation"] = nullptr;
  }
  return out;
}

json to_json(const EquivalenceReport& r) {
  json norms = json::array();
  for (const auto& n : r.norms) norms.push_back(to_json(n));
  return json{{"verdict", to_string(r.verdict)},
              {"reason", r.reason},
              {"norms", std::move(norms)},
              {"norm_disjunction", r.norm_disjunction},
              {"nondegenerate", r.nondegenerate},
              {"identities", to_json(r.identities)},
              {"horizon", r.horizon},
              {"tol", r.tol},
              {"ceiling", r.ceiling},
              {"ceiling_note", r.ceiling_note},
              {"lu_scope", r.lu_scope},
              {"notes", r.notes},
              {"certification", certification_note(r.ceiling)}};
}

json to_json(const ConditionLedger& l) {
  json screen = json::array();
  for (const auto& n : l.screen) screen.push_back(to_json(n));
  json grams = json::array();
  for (const auto& g : l.grams)
    grams.push_back(json{{"label", g.label},
                         {"sigma_min", g.sigma_min},
                         {"sigma_max", g.sigma_max},
                         {"invertible", g.invertible}});
  json out{{"verdict", to_string(l.verdict)},
           {"reason", l.reason},
           {"version", l.version},
           {"horizon", l.horizon},
           {"tol", l.tol},
           {"screen", std::move(screen)},
           {"norm_pairs", l.norm_pairs},
           {"grams", std::move(grams)},
           {"battery_admissible", l.battery_admissible},
           {"reduced", to_json(l.reduced)},
           {"identities", to_json(l.identities)},
           {"ceiling", l.ceiling},
           {"ceiling_note", l.ceiling_note},
           {"nondegenerate", l.nondegenerate},
           {"lu_scope", l.lu_scope},
           {"certification", certification_note(l.ceiling)}};
  if (l.qubit) {
    json signs = json::array();
    for (const auto& s : l.qubit->signs) {
      const char* st = s.status == SignCheck::Status::agree      ? "agree"
                       : s.status == SignCheck::Status::disagree ? "disagree"
                                                                 : "degenerate";
      signs.push_back(
          json{{"label", s.label}, {"a", s.a}, {"b", s.b}, {"status", st}});
    }
    json dets = json::array();
    for (const auto& d : l.qubit->dets)
      dets.push_back(json{{"label", d.label},
                          {"a", d.a},
                          {"b", d.b},
                          {"equal", d.equal},
                          {"degenerate", d.degenerate}});
    const char* st =
        l.qubit->status == QubitUpgrade::Status::granted  ? "granted"
        : l.qubit->status == QubitUpgrade::Status::denied ? "denied"
                                                          : "inconclusive";
    out["qubit_upgrade"] = json{{"status", st},
                                {"reason", l.qubit->reason},
                                {"signs", std::move(signs)},
                                {"dets", std::move(dets)}};
  } else {
    out["qubit_upgrade"] = nullptr;
  }
  return out;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace luq
