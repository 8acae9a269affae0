// Command-line front end: runs one named task per invocation, driven by a
// JSON config, and writes a checksummed, deterministic result record.
//
// Exit codes: 0 success; 2 validation failure (bad config, bad file, bad
// parameters); 3 computational failure (a window or resolution depth too
// small for the requested range).

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seminf/characters.hpp"
#include "seminf/frobenius.hpp"
#include "seminf/homological.hpp"
#include "seminf/io.hpp"
#include "seminf/qgroup.hpp"
#include "seminf/triangular.hpp"

using namespace seminf;
using nlohmann::json;

namespace {

constexpr const char* kEngineVersion = "1.0.0";

Weight xw(const QuantumGroup& U, long m) {
  if (U.rd.rank != 1) throw std::invalid_argument("scalar weight labels need rank one");
  Weight w(1);
  w.c[0] = Rat(m) / 2;  // X-coordinate m corresponds to (m/2) alpha
  return w;
}

QuantumGroup load_algebra(const json& spec) {
  if (spec.contains("file"))
    return io::quantum_group_from_json(
        io::load_file(spec.at("file").get<std::string>(), "algebra"));
  std::string type = spec.at("type").get<std::string>();
  int p = spec.at("p").get<int>();
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime >= 3");
  long ze = spec.value("zeta_exp", 1L);
  if (type == "usl2") return build_u_sl2(p, ze);
  if (type == "gr") {
    auto cartan = spec.value("cartan", std::vector<std::vector<int>>{{2}});
    return build_gr_u(build_root_datum(cartan), p, ze);
  }
  throw std::invalid_argument("unknown algebra type: " + type);
}

/// Module labels: "trivial:<m>", "simple:<m>", "verma:+:<m>", "verma:-:<m>",
/// "file:<path>" (X-coordinate labels; rank one). Arrays mean tensor products.
GradedModule load_module(const QuantumGroup& U, const json& spec) {
  if (spec.is_array()) {
    if (spec.empty()) throw std::invalid_argument("empty module list");
    GradedModule M = load_module(U, spec[0]);
    for (size_t i = 1; i < spec.size(); ++i) M = tensor_module(M, load_module(U, spec[i]));
    return M;
  }
  std::string s = spec.get<std::string>();
  auto split = [&s]() {
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == ':') {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return parts;
  };
  auto parts = split();
  if (parts[0] == "file" && parts.size() == 2)
    return io::module_from_json(U, io::load_file(parts[1], "module"));
  if (parts[0] == "trivial" && parts.size() == 2)
    return trivial_module(U, xw(U, std::stol(parts[1])));
  if (parts[0] == "simple" && parts.size() == 2)
    return simple_module(U, xw(U, std::stol(parts[1])));
  if (parts[0] == "verma" && parts.size() == 3) {
    if (parts[1] != "+" && parts[1] != "-") throw std::invalid_argument("verma sign");
    return verma_module(U, xw(U, std::stol(parts[2])), parts[1] == "+" ? +1 : -1);
  }
  throw std::invalid_argument("unknown module label: " + s);
}

std::pair<int, int> int_range(const json& cfg, const std::string& key, int lo, int hi) {
  if (!cfg.contains(key)) return {lo, hi};
  const json& r = cfg.at(key);
  return {r[0].get<int>(), r[1].get<int>()};
}

Weight twist_of(const QuantumGroup& U, int p, int lam) {
  Weight g(U.rd.rank);
  g.c[0] = Rat(p * lam);
  return g;
}

json series_rows(const Series& s) {
  json rows = json::array();
  for (const auto& [k, v] : s)
    rows.push_back(json::array({io::weight_json(k.mu), k.t, k.s, v}));
  return rows;
}

Series formula_series(const QuantumGroup& U, const json& spec) {
  std::string name = spec.at("formula").get<std::string>();
  Rat hmax = Rat(spec.value("hmax", 12));
  const RootDatum& rd = U.rd;
  int p = U.p;
  if (name == "gk_minus") return charf::gk_minus(rd, p, hmax);
  if (name == "conj_min_resolution") return charf::conj_min_resolution(rd, p, hmax);
  if (name == "sl2_seminf") return charf::sl2_seminf(rd, p, hmax);
  if (name == "seminf_trivial") return charf::seminf_trivial(rd, p, hmax);
  if (name == "lagrangian_local") return charf::lagrangian_local(rd, hmax);
  if (name == "orbit_sum_lhs") return charf::orbit_sum_lhs(rd, hmax);
  if (name == "orbit_sum_rhs") return charf::orbit_sum_rhs(rd, hmax);
  if (name == "borel_ext") {
    int wi = spec.value("weyl_index", 0);
    if (wi < 0 || wi >= (int)rd.weyl.size()) throw std::invalid_argument("weyl_index");
    return charf::borel_ext(rd, p, rd.weyl[wi], hmax);
  }
  throw std::invalid_argument("unknown formula: " + name);
}

Series truncate_to(const Series& a, const Rat& hmax) {
  Series out;
  for (const auto& [k, v] : a) {
    Rat h = k.mu.height();
    if (!(h < -hmax) && !(hmax < h)) series_add(out, k, v);
  }
  return out;
}

json run_task(const json& cfg, uint64_t seed) {
  std::string task = cfg.at("task").get<std::string>();
  json res;

  if (task == "conformal-blocks") {
    int p = cfg.at("p").get<int>();
    auto labels = cfg.at("labels").get<std::vector<int>>();
    res["rank"] = verlinde_invariants_sl2(p, labels);
    return res;
  }
  if (task == "char" || task == "compare-char" || task == "lemma-c") {
    QuantumGroup U = load_algebra(cfg.at("algebra"));
    if (task == "char") {
      res["coefficients"] = series_rows(formula_series(U, cfg));
      return res;
    }
    if (task == "lemma-c") {
      Rat hmax = Rat(cfg.value("hmax", 10));
      Series lhs = charf::orbit_sum_lhs(U.rd, hmax);
      Series rhs = charf::orbit_sum_rhs(U.rd, hmax);
      Series diff = lhs;
      for (const auto& [k, v] : rhs) series_add(diff, k, -v);
      res["equal"] = diff.empty();
      res["lhs"] = series_rows(lhs);
      res["rhs"] = series_rows(rhs);
      res["diff"] = series_rows(diff);
      return res;
    }
    // compare-char: optional p-substitution on the left series
    Series left = formula_series(U, cfg.at("left"));
    if (cfg.value("substitute_left", false)) left = series_substitute_pt(left, U.p);
    Series right = formula_series(U, cfg.at("right"));
    Rat ch = Rat(cfg.value("compare_hmax", 12));
    Series lt = truncate_to(left, ch), rt = truncate_to(right, ch);
    Series diff = lt;
    for (const auto& [k, v] : rt) series_add(diff, k, -v);
    res["equal"] = diff.empty();
    res["diff"] = series_rows(diff);
    return res;
  }

  QuantumGroup U = load_algebra(cfg.at("algebra"));
  if (task == "build") {
    res["algebra"] = io::quantum_group_json(U);
    res["dim"] = (long)U.A.full_basis(U.A.all_gen_indices()).size();
    return res;
  }
  if (task == "check-triangular") {
    long bound = cfg.value("height_bound", 3L);
    auto rep = verify_triangular(U.A, U.plus_part(), U.borel_minus(), bound);
    res["ok"] = rep.ok;
    res["weights_checked"] = rep.weights_checked;
    if (!rep.ok) res["failure"] = rep.failure;
    return res;
  }
  if (task == "check-frobenius") {
    std::string part = cfg.value("part", std::string("full"));
    std::optional<PBWAlgebra> sub;
    if (part == "plus" || part == "minus") {
      if (U.rd.rank != 1) throw std::invalid_argument("part subalgebras need rank one");
      sub.emplace(U.p);
      Weight a = simple_root(1, 0);
      sub->add_generator(part == "plus" ? "E" : "F", part == "plus" ? a : -a, U.p);
    } else if (part != "full") {
      throw std::invalid_argument("part must be full, plus or minus");
    }
    auto rep = check_frobenius(make_mul_table(sub ? *sub : U.A), seed);
    res["verdict"] = rep.verdict == FrobeniusReport::Verdict::frobenius ? "frobenius"
                     : rep.verdict == FrobeniusReport::Verdict::not_frobenius
                         ? "not_frobenius"
                         : "inconclusive";
    res["samples_used"] = rep.samples_used;
    json f = json::array();
    for (const auto& r : rep.functional) f.push_back(io::rat_str(r));
    res["functional"] = std::move(f);
    if (!rep.note.empty()) res["note"] = rep.note;
    return res;
  }
  if (task == "ext") {
    GradedModule L = cfg.contains("left") ? load_module(U, cfg.at("left"))
                                          : trivial_module(U, Weight(U.rd.rank));
    auto [llo, lhi] = int_range(cfg, "lambda", -2, 2);
    auto [nlo, nhi] = int_range(cfg, "n", -2, 2);
    json rows = json::array();
    for (int lam = llo; lam <= lhi; ++lam) {
      Weight g = twist_of(U, U.p, lam);
      auto h = ext_seminf_verma(U, L, g, nlo, nhi);
      for (int n = nlo; n <= nhi; ++n)
        rows.push_back(json::array({io::weight_json(g), n, h.at(n)}));
    }
    res["table"] = std::move(rows);
    return res;
  }
  if (task == "tor0") {
    GradedModule M = load_module(U, cfg.at("right"));
    res["dim"] = tor_seminf_deg0(U, M);
    return res;
  }
  if (task == "ext-graded") {
    Weight mu = xw(U, cfg.value("mu", 0L));
    auto [llo, lhi] = int_range(cfg, "lambda", -2, 2);
    auto [dlo, dhi] = int_range(cfg, "degrees", 0, 4);
    json rows = json::array();
    for (int lam = llo; lam <= lhi; ++lam) {
      Weight g = twist_of(U, U.p, lam);
      auto h = ext_graded_borel(U, mu, g, dlo, dhi);
      for (int d = dlo; d <= dhi; ++d)
        rows.push_back(json::array({io::weight_json(g), d, h.at(d)}));
    }
    res["table"] = std::move(rows);
    return res;
  }
  if (task == "spectral-e1") {
    GradedModule k = trivial_module(U, Weight(U.rd.rank));
    int nmax = cfg.value("nmax", 2), mmax = cfg.value("mmax", 4);
    int depth = cfg.value("depth", 6);
    Rat bw = Rat(cfg.value("bar_window", 40));
    auto [llo, lhi] = int_range(cfg, "lambda", -1, 2);
    BarContext ctxL(U, U.minus_part(), U.borel_plus(), U.A.all_gen_indices());
    BarContext ctxR(U, U.plus_part(), U.borel_minus(), U.A.all_gen_indices());
    ChainComplex R = bar_family(ctxR, k, depth, -bw, bw);
    json rows = json::array();
    for (int lam = llo; lam <= lhi; ++lam) {
      Weight g = twist_of(U, U.p, lam);
      auto e1 = spectral_e1_columns(ctxL, k, R, g, nmax, mmax);
      for (const auto& [nm, d] : e1)
        rows.push_back(json::array({io::weight_json(g), nm.first, nm.second, d}));
    }
    res["table"] = std::move(rows);
    return res;
  }
  if (task == "duality") {
    GradedModule M = cfg.contains("module") ? load_module(U, cfg.at("module"))
                                            : trivial_module(U, Weight(U.rd.rank));
    auto rep = duality_pairing(U, M, cfg.value("depth", 3));
    res["dim_a"] = rep.dim_a;
    res["dim_b"] = rep.dim_b;
    res["well_defined"] = rep.well_defined;
    res["full_rank"] = rep.full_rank;
    return res;
  }
  throw std::invalid_argument("unknown task: " + task);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computational engine for small quantum group homology"};
  std::string config_path, out_path, window_override;
  uint64_t seed = 11;
  int threads = 1;
  app.add_option("--config", config_path, "task config (JSON)")->required();
  app.add_option("--out", out_path, "output path (defaults to stdout)");
  app.add_option("--seed", seed, "seed for randomized searches");
  app.add_option("--threads", threads, "worker threads (reserved)")
      ->check(CLI::PositiveNumber);
  app.add_option("--window", window_override,
                 "override the n/degree window as '<lo>:<hi>'");
  CLI11_PARSE(app, argc, argv);

  json cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot read config " + config_path);
    in >> cfg;
    if (!window_override.empty()) {
      auto sep = window_override.find(':');
      if (sep == std::string::npos) throw std::invalid_argument("bad --window");
      json r = json::array({std::stoi(window_override.substr(0, sep)),
                            std::stoi(window_override.substr(sep + 1))});
      cfg["n"] = r;
      cfg["degrees"] = r;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  }

  json results;
  try {
    results = run_task(cfg, seed);
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "computational failure (window too small): %s\n", e.what());
    return 3;
  } catch (const io::FileError& e) {
    std::fprintf(stderr, "file error: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "computational failure: %s\n", e.what());
    return 3;
  }

  json payload = {{"task", cfg},
                  {"engine_version", kEngineVersion},
                  {"seed", seed},
                  {"conventions",
                   {{"t_orientation", "t-exponent equals cohomological degree"},
                    {"twist_orientation", "e^{p alpha} pairs with positive twists"},
                    {"coproduct", "Drinfeld-Jimbo"},
                    {"scalars", "exact rationals num/den over the cyclotomic power basis"}}},
                  {"results", std::move(results)}};
  if (out_path.empty()) {
    json env = {{"kind", "result"}, {"version", io::kFormatVersion},
                {"checksum", io::checksum_of(payload)}, {"payload", std::move(payload)}};
    std::cout << env.dump(1) << "\n";
  } else {
    io::save_file(out_path, "result", std::move(payload));
  }
  return 0;
}
