// Command-line front end: construction, verification, and reports over the
// JSON interchange formats. "-" names stdin/stdout; reports are single JSON
// documents in json mode and short tables in text mode. Exit codes: 0
// success or affirmative verdict, 1 negative verdict, 2 usage or input
// error, 3 numeric failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "planet/algebraic.hpp"
#include "planet/construct.hpp"
#include "planet/io.hpp"
#include "planet/net.hpp"
#include "planet/quasigroup.hpp"
#include "planet/resonance.hpp"
#include "planet/selfcheck.hpp"

namespace {

using namespace planet;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Session {
  std::string format = "json";
  unsigned long long seed = 0;
  bool seed_set = false;
  Tol tol;

  unsigned long long effective_seed() const {
    if (seed_set) return seed;
    if (const char* env = std::getenv("PLANET_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw InputError(std::string("PLANET_SEED is not an integer: ") + env);
      }
    }
    return 20770;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text << "\n";
}

AnyNet load_net(const std::string& path) { return net_from_json(Json::parse(read_input(path))); }

const char* verdict_name(GroupVerdict v) {
  switch (v) {
    case GroupVerdict::abelian_group:
      return "abelian group";
    case GroupVerdict::nonabelian_group:
      return "nonabelian group";
    default:
      return "not a group";
  }
}

Json net_report_to_json(const NetReport& rep) {
  return Json{{"ok", rep.ok},         {"k", rep.k},
              {"m", rep.m},           {"r", rep.r},
              {"violations", rep.violations}, {"warnings", rep.warnings}};
}

void print_net_report_text(const NetReport& rep) {
  std::cout << "ok: " << (rep.ok ? "yes" : "no") << "\n"
            << "k: " << rep.k << "\nm: " << rep.m << "\nr: " << rep.r << "\n";
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
}

int cmd_verify(const Session& s, const std::string& file) {
  NetReport rep = std::visit([&](const auto& net) { return verify_net(net, s.tol); },
                             load_net(file));
  if (s.format == "json")
    std::cout << net_report_to_json(rep).dump(2) << "\n";
  else
    print_net_report_text(rep);
  return rep.ok ? kExitOk : kExitNegative;
}

int cmd_euler(const Session& s, int k, int m, int r) {
  EulerReport rep = euler_feasible(k, m, r);
  if (s.format == "json") {
    Json j{{"k", k},
           {"m", m},
           {"r", r},
           {"feasible", rep.feasible},
           {"bound", detail::rational_to_json(rep.rhs)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (rep.feasible ? "feasible" : "infeasible") << " (k = " << k
              << ", bound = " << rep.rhs << ")\n";
  }
  return rep.feasible ? kExitOk : kExitNegative;
}

void print_latin_text(const LatinSquare& ls) {
  std::cout << "m: " << ls.m << "\n";
  for (const auto& row : ls.table) {
    for (size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j];
    std::cout << "\n";
  }
}

int cmd_latin(const Session& s, const std::string& file) {
  LatinSquare ls = std::visit([&](const auto& net) { return latin_from_net(net, {}, s.tol); },
                              load_net(file));
  if (s.format == "json")
    std::cout << latin_to_json(ls).dump(2) << "\n";
  else
    print_latin_text(ls);
  return kExitOk;
}

int cmd_group(const Session& s, const std::string& file) {
  LatinSquare ls = std::visit([&](const auto& net) { return latin_from_net(net, {}, s.tol); },
                              load_net(file));
  GroupId gid = group_identify(normalize_to_loop(ls, 0, 0));
  if (s.format == "json") {
    Json j{{"verdict", verdict_name(gid.verdict)},
           {"invariant_factors", gid.invariant_factors},
           {"latin", latin_to_json(ls)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict_name(gid.verdict) << "\n";
    if (gid.verdict == GroupVerdict::abelian_group) {
      std::cout << "invariant factors:";
      for (int f : gid.invariant_factors) std::cout << " " << f;
      std::cout << "\n";
    }
  }
  return gid.verdict == GroupVerdict::abelian_group ? kExitOk : kExitNegative;
}

int cmd_algebraize(const Session& s, const std::string& file) {
  return std::visit(
      [&](const auto& net) {
        auto rep = is_algebraic(net, s.tol);
        Json j{{"algebraic", rep.algebraic},
               {"regular", rep.algebraic},
               {"class", nullptr},
               {"cubic", nullptr},
               {"residuals", Json{{"max_on_curve", rep.max_residual}}}};
        if (rep.cubic_class) j["class"] = cubic_tag_name(rep.cubic_class->tag);
        if (rep.cubic) j["cubic"] = cubic_to_json(*rep.cubic);
        if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
        if (s.format == "json") {
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "algebraic: " << (rep.algebraic ? "yes" : "no") << "\n";
          if (rep.cubic_class)
            std::cout << "class: " << cubic_tag_name(rep.cubic_class->tag) << "\n";
          std::cout << "max residual: " << rep.max_residual << "\n";
          if (!rep.diagnostic.empty()) std::cout << "diagnostic: " << rep.diagnostic << "\n";
        }
        return rep.algebraic ? kExitOk : kExitNegative;
      },
      load_net(file));
}

int cmd_resonance(const Session& s, const std::string& file, const std::string& vector_file) {
  return std::visit(
      [&](const auto& net) {
        using S = std::decay_t<decltype(net.classes[0][0].c[0])>;
        auto pts = compute_points(net);
        std::vector<Line<S>> lines;
        for (const auto& cls : net.classes)
          for (const auto& l : cls) lines.push_back(l);
        ResonanceData data = q_blocks(incidence_matrix(pts, lines, s.tol));
        ComponentV<S> comp = essential_component(net, s.tol);

        Json blocks = Json::array();
        for (const auto& blk : data.blocks)
          blocks.push_back(
              Json{{"lines", blk.lines}, {"affine", blk.affine}, {"nullity", blk.nullity}});
        Json j{{"J", data.J},
               {"Q", data.Q},
               {"blocks", std::move(blocks)},
               {"affine_count", data.affine_count},
               {"affine_cover", data.affine_cover},
               {"dimV", static_cast<int>(comp.basis.size())},
               {"h1", nullptr}};

        if (!vector_file.empty()) {
          Json vj = Json::parse(read_input(vector_file));
          std::vector<S> a;
          if constexpr (scalar_traits<S>::is_exact) {
            FieldPtr field = net.classes[0][0].c[0].field();
            a = vector_from_json(vj, ScalarReader<Cyclo>{field});
          } else {
            a = vector_from_json(vj, ScalarReader<CD>{});
          }
          j["h1"] = os_h1_dim(arrangement_from_net(net, s.tol), a, s.tol);
        }

        if (s.format == "json") {
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "blocks: " << data.blocks.size() << " (" << data.affine_count
                    << " affine, cover: " << (data.affine_cover ? "yes" : "no") << ")\n"
                    << "dimV: " << comp.basis.size() << "\n";
          if (!j["h1"].is_null()) std::cout << "h1: " << j["h1"].get<int>() << "\n";
        }
        return kExitOk;
      },
      load_net(file));
}

struct SuiteLine {
  std::string name;
  int completed = 0;
  int passed = 0;
  double max_residual = 0.0;
  bool ok = false;
};

SuiteLine run_concurrency_suite(Rng& rng, const Tol& tol) {
  SuiteLine line{"concurrency"};
  SuiteReport rep = run_trials<CD>([](Rng& r, const CD& ex, const Tol& t) {
    return nine_point_trial<CD>(r, ex, t);
  }, rng, CD{1.0, 0.0}, 100, tol);
  line.completed = rep.completed;
  line.passed = rep.passed;
  line.max_residual = rep.max_residual;
  line.ok = rep.completed == 100 && rep.passed == 100 && rep.max_residual < 1e-8;
  return line;
}

SuiteLine run_quadrangle_suite(Rng& rng, const Tol& tol) {
  SuiteLine line{"harmonic quadrangle"};
  SuiteReport rep = run_trials<CD>([](Rng& r, const CD& ex, const Tol& t) {
    return quadrangle_trial<CD>(r, ex, t);
  }, rng, CD{1.0, 0.0}, 100, tol);
  line.completed = rep.completed;
  line.passed = rep.passed;
  line.max_residual = rep.max_residual;
  line.ok = rep.completed == 100 && rep.passed == 100 && rep.max_residual < 1e-8;
  return line;
}

SuiteLine run_complete_set_suite(Rng& rng, const Tol& tol) {
  SuiteLine line{"complete sets"};
  EllipticData e = weierstrass(default_tau);
  int attempts = 0;
  while (line.completed < 25 && attempts++ < 1000) {
    auto r = complete_set_trial(e, rng, tol);
    if (!r) continue;
    ++line.completed;
    if (*r) ++line.passed;
  }
  bool positives_ok = line.completed == 25 && line.passed == 25;

  // Nine unstructured random points must fail the same check.
  int negative_hits = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<Point<CD>> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(random_point(rng, CD{1.0, 0.0}));
    try {
      if (!complete_set_check(pts, tol)) ++negative_hits;
    } catch (const Error&) {
    }
  }
  line.ok = positives_ok && negative_hits == 10;
  return line;
}

SuiteLine run_chord_suite(Rng& rng, const Tol&) {
  SuiteLine line{"singular chord laws"};
  const SingularCase cases[6] = {SingularCase::nodal,           SingularCase::cuspidal,
                                 SingularCase::conic_transverse, SingularCase::conic_tangent,
                                 SingularCase::triangle,        SingularCase::concurrent};
  bool all = true;
  for (SingularCase c : cases)
    for (int t = 0; t < 60; ++t) {
      auto trial = singular_chord_trial(c, rng);
      if (!trial) {
        all = false;
        continue;
      }
      ++line.completed;
      bool ok = trial->held < 1e-9 && trial->perturbed > 1e-4;
      if (ok) ++line.passed;
      all = all && ok;
      line.max_residual = std::max(line.max_residual, trial->held);
    }
  line.ok = all && line.completed == 360;
  return line;
}

int cmd_selftest(const Session& s) {
  Rng rng(static_cast<Rng::result_type>(s.effective_seed()));
  std::vector<SuiteLine> lines = {
      run_concurrency_suite(rng, s.tol), run_quadrangle_suite(rng, s.tol),
      run_complete_set_suite(rng, s.tol), run_chord_suite(rng, s.tol)};
  bool all = true;
  if (s.format == "json") {
    Json j = Json::array();
    for (const auto& l : lines) {
      j.push_back(Json{{"suite", l.name},
                       {"completed", l.completed},
                       {"passed", l.passed},
                       {"max_residual", l.max_residual},
                       {"ok", l.ok}});
      all = all && l.ok;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) {
      std::cout << l.name << ": " << l.passed << "/" << l.completed
                << " passed, max residual " << l.max_residual << (l.ok ? "" : "  FAILED")
                << "\n";
      all = all && l.ok;
    }
  }
  return all ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-nets of lines in the complex projective plane"};
  app.require_subcommand(1);

  Session session;
  app.add_option("--format", session.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--seed", session.seed, "Random seed (PLANET_SEED fallback)")
      ->each([&](const std::string&) { session.seed_set = true; });
  app.add_option("--eps-eq", session.tol.eq, "Equality tolerance")->capture_default_str();
  app.add_option("--eps-rank", session.tol.rank, "Rank tolerance")->capture_default_str();
  app.add_option("--eps-series", session.tol.series, "Series tolerance")->capture_default_str();

  int rc = kExitOk;

  auto* construct = app.add_subcommand("construct", "Build a net and print its JSON");
  construct->require_subcommand(1);
  std::string out_path = "-";
  construct->add_option("-o,--output", out_path, "Output file, - for stdout");

  bool approx_backend = false;
  construct->add_flag("--approx", approx_backend, "Use the floating-point backend");

  auto emit_net = [&](const auto& net) { emit(net_to_json(net).dump(2), out_path); };

  int pencil_m = 0;
  auto* pencil = construct->add_subcommand("pencil", "Pencil net with m lines per class");
  pencil->add_option("-m", pencil_m, "Lines per class")->required();
  pencil->callback([&] {
    if (approx_backend)
      emit_net(pencil_net_approx(pencil_m));
    else
      emit_net(pencil_net(pencil_m));
  });

  auto* braid = construct->add_subcommand("braid", "The braid arrangement 3-net");
  braid->callback([&] { emit_net(braid_net()); });

  auto* hessian = construct->add_subcommand("hessian", "The Hessian 4-net");
  hessian->callback([&] {
    if (approx_backend)
      emit_net(hessian_net_approx());
    else
      emit_net(hessian_net());
  });

  std::vector<int> invariants;
  std::vector<double> tau_parts;
  auto* torus = construct->add_subcommand("torus", "Torus net for given invariant factors");
  torus->add_option("--invariants", invariants, "Invariant factors m1,m2")
      ->required()
      ->delimiter(',');
  torus->add_option("--tau", tau_parts, "Modulus as re,im")->delimiter(',')->expected(2);
  torus->callback([&] {
    if (approx_backend) throw InputError("torus construction already uses the approx backend");
    CD tau = tau_parts.size() == 2 ? CD{tau_parts[0], tau_parts[1]} : default_tau;
    emit_net(torus_net(invariants, tau));
  });

  std::string case_token;
  int singular_m = 0;
  auto* singular = construct->add_subcommand("singular", "Coset net on a singular cubic");
  singular->add_option("--case", case_token, "Case: 1a, 1b, 2a, 2b, 3a, 3b or a case name")
      ->required();
  singular->add_option("-m", singular_m, "Subgroup order")->required();
  singular->callback([&] {
    SingularCase c;
    if (case_token == "1a" || case_token == "nodal")
      c = SingularCase::nodal;
    else if (case_token == "1b" || case_token == "cuspidal")
      c = SingularCase::cuspidal;
    else if (case_token == "2a" || case_token == "conic-transverse")
      c = SingularCase::conic_transverse;
    else if (case_token == "2b" || case_token == "conic-tangent")
      c = SingularCase::conic_tangent;
    else if (case_token == "3a" || case_token == "triangle")
      c = SingularCase::triangle;
    else if (case_token == "3b" || case_token == "concurrent")
      c = SingularCase::concurrent;
    else
      throw InputError("unknown singular case: " + case_token);
    if (approx_backend)
      emit_net(singular_cubic_net_approx(c, singular_m));
    else
      emit_net(singular_cubic_net(c, singular_m));
  });

  std::string verify_file, latin_file, group_file, algebraize_file, resonance_file;
  std::string vector_file;
  int euler_k = 0, euler_m = 0, euler_r = 0;

  auto* verify = app.add_subcommand("verify", "Check the net axioms of a JSON net");
  verify->add_option("file", verify_file, "Net JSON, - for stdin")->required();
  verify->callback([&] { rc = cmd_verify(session, verify_file); });

  auto* euler = app.add_subcommand("euler", "Feasibility bound for (k, m, r)");
  euler->add_option("-k", euler_k, "Number of classes")->required();
  euler->add_option("-m", euler_m, "Lines per class")->required();
  euler->add_option("-r", euler_r, "Pencil classes");
  euler->callback([&] { rc = cmd_euler(session, euler_k, euler_m, euler_r); });

  auto* latin = app.add_subcommand("latin", "Latin square of a 3-net");
  latin->add_option("file", latin_file, "Net JSON, - for stdin")->required();
  latin->callback([&] { rc = cmd_latin(session, latin_file); });

  auto* group = app.add_subcommand("group", "Identify the group of a 3-net");
  group->add_option("file", group_file, "Net JSON, - for stdin")->required();
  group->callback([&] { rc = cmd_group(session, group_file); });

  auto* algebraize = app.add_subcommand("algebraize", "Find a cubic through the dual points");
  algebraize->add_option("file", algebraize_file, "Net JSON, - for stdin")->required();
  algebraize->callback([&] { rc = cmd_algebraize(session, algebraize_file); });

  auto* resonance = app.add_subcommand("resonance", "Incidence blocks and cohomology");
  resonance->add_option("file", resonance_file, "Net JSON, - for stdin")->required();
  resonance->add_option("--vector", vector_file, "Vector JSON for the cohomology dimension");
  resonance->callback([&] { rc = cmd_resonance(session, resonance_file, vector_file); });

  auto* selftest = app.add_subcommand("selftest", "Randomized property suites");
  selftest->callback([&] { rc = cmd_selftest(session); });

  // Global options remain usable after a subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const Json::parse_error& e) {
    std::cerr << "input JSON: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return rc;
}
