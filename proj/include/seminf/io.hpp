#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "seminf/module.hpp"
#include "seminf/qgroup.hpp"

namespace seminf {
namespace io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Thrown when a file fails its integrity or version checks (as opposed to
/// being semantically invalid).
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational " + s);
  r.canonicalize();
  return r;
}

inline json weight_json(const Weight& w) {
  json a = json::array();
  for (const auto& c : w.c) a.push_back(rat_str(c));
  return a;
}

inline Weight weight_from(const json& a) {
  Weight w((int)a.size());
  for (size_t i = 0; i < a.size(); ++i) w.c[i] = parse_rat(a[i].get<std::string>());
  return w;
}

inline json cyclo_json(const Cyclo& c) {
  json a = json::array();
  if (c.p() == 0) return a;  // canonical zero
  for (int i = 0; i < Cyclo::degree(c.p()); ++i) a.push_back(rat_str(c.coord(i)));
  return a;
}

inline Cyclo cyclo_from(int p, const json& a) {
  Cyclo c = Cyclo::zero(p);
  if (a.empty()) return c;
  if ((int)a.size() != Cyclo::degree(p)) throw FileError("cyclo: wrong coordinate count");
  for (int i = 0; i < Cyclo::degree(p); ++i)
    c += Cyclo::zeta_pow(p, i) * parse_rat(a[i].get<std::string>());
  return c;
}

inline json word_json(const Word& w) {
  json a = json::array();
  for (const auto& [g, e] : w) a.push_back(json::array({g, e}));
  return a;
}

inline Word word_from(const json& a) {
  Word w;
  for (const auto& f : a) w.push_back({f[0].get<int>(), f[1].get<int>()});
  return w;
}

inline json terms_json(const std::vector<std::pair<Cyclo, Word>>& ts) {
  json a = json::array();
  for (const auto& [c, w] : ts) a.push_back(json::array({cyclo_json(c), word_json(w)}));
  return a;
}

inline std::vector<std::pair<Cyclo, Word>> terms_from(int p, const json& a) {
  std::vector<std::pair<Cyclo, Word>> ts;
  for (const auto& t : a) ts.push_back({cyclo_from(p, t[0]), word_from(t[1])});
  return ts;
}

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string checksum_of(const json& payload) {
  std::ostringstream os;
  os << std::hex << fnv1a64(payload.dump());
  return os.str();
}

/// Header + generator table + straightening rule list, exact coefficients.
inline json algebra_json(const PBWAlgebra& A) {
  json g = json::array();
  for (const auto& gen : A.gens)
    g.push_back({{"name", gen.name}, {"degree", weight_json(gen.degree)},
                 {"power", gen.power}});
  json swaps = json::array();
  for (int j = 0; j < A.ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      const SwapRule& r = A.swap_rule(j, i);
      json e = {{"j", j}, {"i", i}, {"scalar", r.scalar}};
      if (r.scalar)
        e["factor"] = cyclo_json(r.factor);
      else
        e["terms"] = terms_json(r.terms);
      swaps.push_back(std::move(e));
    }
  json powers = json::array();
  for (int i = 0; i < A.ngens(); ++i) powers.push_back(terms_json(A.power_rule(i)));
  return {{"p", A.p}, {"generators", g}, {"swaps", swaps}, {"powers", powers}};
}

inline PBWAlgebra algebra_from_json(const json& j) {
  PBWAlgebra A(j.at("p").get<int>());
  for (const auto& g : j.at("generators"))
    A.add_generator(g.at("name").get<std::string>(), weight_from(g.at("degree")),
                    g.at("power").get<int>());
  for (const auto& s : j.at("swaps")) {
    int jj = s.at("j").get<int>(), ii = s.at("i").get<int>();
    if (s.at("scalar").get<bool>())
      A.set_scalar_swap(jj, ii, cyclo_from(A.p, s.at("factor")));
    else
      A.set_general_swap(jj, ii, terms_from(A.p, s.at("terms")));
  }
  const json& pw = j.at("powers");
  for (int i = 0; i < (int)pw.size(); ++i) A.set_power_rule(i, terms_from(A.p, pw[i]));
  return A;
}

inline json quantum_group_json(const QuantumGroup& U) {
  return {{"p", U.p},
          {"zeta_exp", U.zeta_exp},
          {"cartan", U.rd.cartan},
          {"algebra", algebra_json(U.A)},
          {"e_gens", U.e_gens},
          {"k_gens", U.k_gens},
          {"f_gens", U.f_gens},
          {"has_coproduct", U.has_coproduct}};
}

inline QuantumGroup quantum_group_from_json(const json& j) {
  QuantumGroup U(j.at("p").get<int>());
  U.zeta_exp = j.at("zeta_exp").get<long>();
  U.rd = build_root_datum(j.at("cartan").get<std::vector<std::vector<int>>>());
  U.A = algebra_from_json(j.at("algebra"));
  U.e_gens = j.at("e_gens").get<std::vector<int>>();
  U.k_gens = j.at("k_gens").get<std::vector<int>>();
  U.f_gens = j.at("f_gens").get<std::vector<int>>();
  U.has_coproduct = j.at("has_coproduct").get<bool>();
  return U;
}

/// Module payload: algebra hash reference, weight table, sparse action blocks.
inline json module_json(const GradedModule& M) {
  json dims = json::array();
  for (const auto& [w, d] : M.dims) dims.push_back(json::array({weight_json(w), d}));
  json act = json::array();
  for (int g = 0; g < (int)M.act.size(); ++g) {
    if (M.act[g].empty()) continue;
    json blocks = json::array();
    for (const auto& [w, b] : M.act[g]) {
      json ent = json::array();
      for (int r = 0; r < b.nrows(); ++r)
        for (const auto& [c, v] : b.row(r)) ent.push_back(json::array({r, c, cyclo_json(v)}));
      blocks.push_back({{"weight", weight_json(w)}, {"rows", b.nrows()},
                        {"cols", b.ncols()}, {"entries", std::move(ent)}});
    }
    act.push_back({{"gen", g}, {"blocks", std::move(blocks)}});
  }
  return {{"algebra_checksum", checksum_of(quantum_group_json(*M.U))},
          {"acting", M.acting},
          {"dims", std::move(dims)},
          {"act", std::move(act)}};
}

inline GradedModule module_from_json(const QuantumGroup& U, const json& j) {
  if (j.at("algebra_checksum").get<std::string>() != checksum_of(quantum_group_json(U)))
    throw FileError("module file refers to a different algebra");
  GradedModule M(U);
  M.acting = j.at("acting").get<std::vector<int>>();
  for (const auto& d : j.at("dims")) M.set_dim(weight_from(d[0]), d[1].get<int>());
  for (const auto& ga : j.at("act")) {
    int g = ga.at("gen").get<int>();
    for (const auto& blk : ga.at("blocks")) {
      SparseMat b(blk.at("rows").get<int>(), blk.at("cols").get<int>());
      for (const auto& e : blk.at("entries"))
        b.add(e[0].get<int>(), e[1].get<int>(), cyclo_from(U.p, e[2]));
      M.act[g][weight_from(blk.at("weight"))] = std::move(b);
    }
  }
  return M;
}

/// File envelope: kind + format version + checksummed payload.
inline void save_file(const std::string& path, const std::string& kind, json payload) {
  json env = {{"kind", kind},
              {"version", kFormatVersion},
              {"checksum", checksum_of(payload)},
              {"payload", std::move(payload)}};
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << env.dump(1) << "\n";
}

inline json load_file(const std::string& path, const std::string& kind) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read " + path);
  json env;
  try {
    in >> env;
  } catch (const json::exception& e) {
    throw FileError(std::string("malformed file: ") + e.what());
  }
  if (env.at("kind").get<std::string>() != kind) throw FileError("wrong file kind");
  if (env.at("version").get<int>() != kFormatVersion) throw FileError("version mismatch");
  if (checksum_of(env.at("payload")) != env.at("checksum").get<std::string>())
    throw FileError("checksum failure");
  return env.at("payload");
}

}  // namespace io
}  // namespace seminf
