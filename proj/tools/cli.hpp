#pragma once

// Command-line front end. Kept in a header so the tests can drive it with
// string streams instead of spawning processes.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncts/connection.hpp"
#include "ncts/dimer.hpp"
#include "ncts/error.hpp"
#include "ncts/format.hpp"
#include "ncts/lattice.hpp"
#include "ncts/network.hpp"
#include "ncts/oracle.hpp"
#include "ncts/reductions.hpp"
#include "ncts/serialize.hpp"

namespace ncts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIdentityFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string path = "flat:1..5";
  std::string point = "3,3";
  std::string format = "json";
  std::string dot_file;
  std::string window = "-4..4,0..6";
  std::string graph = "network";
  bool bullet = false;
  std::uint64_t seed = 0;
  std::uint64_t modulus = kMersenne61;
  int trials = kDefaultTrials;
  int dim = kDefaultDim;
  int n = 20;
  int range = 50;
  int patch = 4;
};

/// NCTS_SEED replaces the default seed; an explicit --seed still wins.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("NCTS_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::parse_error, "NCTS_SEED must be a non-negative integer");
  }
  return 0;
}

namespace detail {

inline Json point_json(LatticePoint p) { return Json::array({p.j, p.k}); }

inline void write_dot(const std::string& file, const std::string& dot) {
  std::ofstream os(file);
  if (!os) throw Error(Errc::parse_error, "cannot write " + file);
  os << dot;
}

inline int run_solve(const RunConfig& c, std::ostream& out) {
  const auto path = parse_path_spec(c.path);
  const auto p = parse_point(c.point);
  const auto proj = projections(path, p);
  const auto poly = c.bullet ? solve_bullet(path, p) : solve(path, p);
  if (c.format == "text") {
    out << to_text(poly) << "\n";
  } else {
    Json j{{"point", point_json(p)},
           {"projection", Json::array({proj.j0, proj.j1})},
           {"bullet", c.bullet},
           {"terms", poly.size()},
           {"polynomial", to_json(poly)}};
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

inline int run_paths(const RunConfig& c, std::ostream& out) {
  const auto path = parse_path_spec(c.path);
  const auto p = parse_point(c.point);
  const auto proj = projections(path, p);
  const auto net = build_network(path, proj.j0, proj.j1);
  const auto paths = enumerate_paths(net, 1, 1);
  if (!c.dot_file.empty()) write_dot(c.dot_file, to_dot(net));
  NCPolynomial z;
  Json list = Json::array();
  for (const auto& np : paths) {
    z.add_term(np.weight, 1);
    list.push_back(to_json(np));
  }
  Json j{{"point", point_json(p)},
         {"projection", Json::array({proj.j0, proj.j1})},
         {"count", paths.size()},
         {"partition_function", to_json(z)},
         {"paths", list}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

inline int run_dimers(const RunConfig& c, std::ostream& out) {
  const auto path = parse_path_spec(c.path);
  const auto p = parse_point(c.point);
  const auto proj = projections(path, p);
  const auto ladder = build_ladder(path, proj.j0, proj.j1);
  if (!c.dot_file.empty()) write_dot(c.dot_file, to_dot(ladder));
  const auto matchings = enumerate_matchings(ladder);
  NCPolynomial z;
  Json list = Json::array();
  for (const auto& m : matchings) {
    z.add_term(m.weight, 1);
    list.push_back(to_json(m));
  }
  Json j{{"point", point_json(p)},
         {"projection", Json::array({proj.j0, proj.j1})},
         {"columns", ladder.columns},
         {"count", integer_to_json(count_matchings(ladder))},
         {"partition_function", to_json(z)},
         {"matchings", list}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

inline int run_check(const RunConfig& c, std::ostream& out) {
  const auto path = parse_path_spec(c.path);
  const auto window = parse_window(c.window);
  if (c.trials < 1) throw Error(Errc::parse_error, "--trials must be positive");
  Json scenes = Json::array();
  bool ok = true;
  int control_failures = 0;
  for (int t = 0; t < c.trials; ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    with_resampling(path, c.modulus, c.dim, seed, [&](const MatrixScene& scene) {
      const auto report = run_identity_suite(scene, path, window);
      const auto control = run_negative_control(scene, path, window);
      ok = ok && report.ok();
      if (control.failed > 0) ++control_failures;
      Json r = to_json(report);
      r["negative_control_failed"] = control.failed;
      scenes.push_back(std::move(r));
      return 0;
    });
  }
  // The corrupted identity has to be caught in at least 95% of the scenes.
  const int needed = static_cast<int>(std::ceil(0.95 * c.trials));
  const bool control_ok = control_failures >= needed;
  Json j{{"path", to_spec(path)},
         {"window", c.window},
         {"trials", c.trials},
         {"dim", c.dim},
         {"modulus", c.modulus},
         {"seed", c.seed},
         {"ok", ok},
         {"negative_control", Json{{"failing_scenes", control_failures}, {"required", needed}, {"ok", control_ok}}},
         {"scenes", scenes}};
  out << j.dump(2) << "\n";
  return ok && control_ok ? kExitOk : kExitIdentityFailure;
}

inline int run_reduce_qsystem(const RunConfig& c, std::ostream& out) {
  if (c.trials < 1 || c.n < 2) throw Error(Errc::parse_error, "--trials must be positive and --n at least 2");
  Json scenes = Json::array();
  bool ok = true;
  const Window w{-c.n, c.n, 0, c.n};
  for (int t = 0; t < c.trials; ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    const auto state = qsystem_iterate(sample_qsystem(c.modulus, c.dim, seed), c.n);
    const auto recursion = check_qsystem(state);
    const auto embedding = embed_qsystem(state, w);
    ok = ok && recursion.ok() && embedding.ok();
    scenes.push_back(Json{{"seed", seed}, {"recursion", to_json(recursion)}, {"embedding", to_json(embedding)}});
  }
  Json j{{"n", c.n}, {"trials", c.trials}, {"dim", c.dim}, {"ok", ok}, {"scenes", scenes}};
  out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitIdentityFailure;
}

inline int run_reduce_quantum(const RunConfig& c, std::ostream& out) {
  if (c.range < 1 || c.patch < 1) throw Error(Errc::parse_error, "--range and --patch must be positive");
  const auto exps = check_exponent_system(c.range);
  const auto patch = check_quantum_reduction(c.patch);
  const bool ok = exps.ok() && patch.ok();
  Json j{{"range", c.range}, {"patch", c.patch}, {"ok", ok}, {"exponents", to_json(exps)}, {"patch_check", to_json(patch)}};
  out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitIdentityFailure;
}

inline int run_render(const RunConfig& c, std::ostream& out) {
  const auto path = parse_path_spec(c.path);
  const auto p = parse_point(c.point);
  const auto proj = projections(path, p);
  if (c.graph == "network") {
    out << to_dot(build_network(path, proj.j0, proj.j1));
  } else {
    out << to_dot(build_ladder(path, proj.j0, proj.j1));
  }
  return kExitOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c.seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Non-commutative A1 T-system solver and verifier", "ncts"};
  app.require_subcommand(1);

  auto add_path_point = [&](CLI::App* sub) {
    sub->add_option("--path", c.path, "flat:<lo>..<hi> or \"j0=<int>; heights=<h,...>\"")->required();
    sub->add_option("--point", c.point, "lattice point j,k")->required();
  };
  auto add_sampling = [&](CLI::App* sub, const char* trials_help) {
    sub->add_option("--trials", c.trials, trials_help);
    sub->add_option("--seed", c.seed, "first scene seed (default 0, or NCTS_SEED)");
    sub->add_option("--dim", c.dim, "matrix dimension")->capture_default_str();
    sub->add_option("--modulus", c.modulus, "prime modulus")->capture_default_str();
  };

  auto* solve_cmd = app.add_subcommand("solve", "closed-form T_{j,k} as a Laurent polynomial");
  add_path_point(solve_cmd);
  solve_cmd->add_flag("--bullet", c.bullet, "return the bullet image");
  solve_cmd->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* paths_cmd = app.add_subcommand("paths", "network paths of the projection section");
  add_path_point(paths_cmd);
  paths_cmd->add_option("--dot", c.dot_file, "write the network as DOT");
  paths_cmd->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

  auto* dimers_cmd = app.add_subcommand("dimers", "perfect matchings of the ladder");
  add_path_point(dimers_cmd);
  dimers_cmd->add_option("--dot", c.dot_file, "write the ladder as DOT");
  dimers_cmd->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

  auto* check_cmd = app.add_subcommand("check", "randomised identity suite over F_p matrices");
  check_cmd->add_option("--path", c.path, "initial data path")->required();
  check_cmd->add_option("--window", c.window, "j-range,k-range, e.g. -4..4,0..6")->capture_default_str();
  add_sampling(check_cmd, "number of random scenes (default 20)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Q-system and quantum reductions");
  reduce_cmd->require_subcommand(1);
  auto* q_cmd = reduce_cmd->add_subcommand("qsystem", "Q-system recursion and its embedding");
  q_cmd->add_option("--n", c.n, "last index n")->capture_default_str();
  add_sampling(q_cmd, "number of random scenes (default 10)");
  auto* quantum_cmd = reduce_cmd->add_subcommand("quantum", "exponent tables and quantum patch check");
  quantum_cmd->add_option("--range", c.range, "bound on |j|, |k|")->capture_default_str();
  quantum_cmd->add_option("--patch", c.patch, "patch size for the formal check")->capture_default_str();

  auto* render_cmd = app.add_subcommand("render", "DOT rendering of the network or ladder");
  add_path_point(render_cmd);
  render_cmd->add_option("--graph", c.graph, "network or ladder")->check(CLI::IsMember({"network", "ladder"}));

  // The trials default differs per subcommand, so it is fixed after parsing.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (q_cmd->parsed() && q_cmd->count("--trials") == 0) c.trials = 10;
  if (check_cmd->parsed() && check_cmd->count("--trials") == 0) c.trials = kDefaultTrials;

  try {
    if (solve_cmd->parsed()) return detail::run_solve(c, out);
    if (paths_cmd->parsed()) return detail::run_paths(c, out);
    if (dimers_cmd->parsed()) return detail::run_dimers(c, out);
    if (check_cmd->parsed()) return detail::run_check(c, out);
    if (q_cmd->parsed()) return detail::run_reduce_qsystem(c, out);
    if (quantum_cmd->parsed()) return detail::run_reduce_quantum(c, out);
    if (render_cmd->parsed()) return detail::run_render(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == Errc::singular_intermediate || e.code() == Errc::singular_sample) return kExitIdentityFailure;
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ncts::cli
