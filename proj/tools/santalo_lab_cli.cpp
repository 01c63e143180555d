#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "santalo_lab.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInternal = 1, kMalformed = 2, kGeometric = 3, kViolation = 4 };

struct CliError {
  int code;
  std::string message;
};

int exit_for(sl_status s) {
  switch (s) {
    case SL_OK: return kOk;
    case SL_PARSE_ERROR:
    case SL_INVALID_ARGUMENT: return kMalformed;
    case SL_INTERNAL_ERROR: return kInternal;
    default: return kGeometric;
  }
}

void check(sl_status s) {
  if (s != SL_OK) throw CliError{exit_for(s), sl_last_error()};
}

std::string owned(char* s) {
  std::string out = s ? s : "";
  sl_string_free(s);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kMalformed, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kMalformed, "cannot write " + path};
  out << text;
}

// Reports come back compact from the library; files get them indented.
std::string pretty(const std::string& compact) { return json::parse(compact).dump(2) + "\n"; }

struct Polytope {
  sl_polytope* p = nullptr;
  ~Polytope() { sl_polytope_free(p); }
};

struct System {
  sl_system* s = nullptr;
  ~System() { sl_system_free(s); }
};

struct Config {
  sl_tolerances tol = sl_default_tolerances();
  std::string input;
  std::string out;
  std::string verdict_out;
  std::vector<double> center;
  std::vector<double> normal;
  double offset = 0.0;
  int grid = 33;
  std::optional<std::uint64_t> seed;
  int d = 2;
  int k = 3;
  int trials = 1000;
  std::optional<double> s, t;
};

Polytope load_polytope(const Config& c) {
  Polytope p;
  check(sl_polytope_from_json(read_input(c.input).c_str(), &c.tol, &p.p));
  return p;
}

System load_system(const Config& c) {
  System s;
  check(sl_system_from_json(read_input(c.input).c_str(), &c.tol, &s.s));
  return s;
}

int dim_of(const Polytope& p) {
  int d = 0;
  check(sl_polytope_dim(p.p, &d));
  return d;
}

int cmd_polar(const Config& c) {
  const Polytope p = load_polytope(c);
  if (!c.center.empty() && static_cast<int>(c.center.size()) != dim_of(p)) {
    throw CliError{kMalformed, "--center has the wrong dimension"};
  }
  char* r = nullptr;
  check(sl_polar(p.p, c.center.empty() ? nullptr : c.center.data(), &c.tol, &r));
  emit(pretty(owned(r)), c.out);
  return kOk;
}

int cmd_santalo(const Config& c) {
  const Polytope p = load_polytope(c);
  char* r = nullptr;
  check(sl_santalo(p.p, &c.tol, &r));
  emit(pretty(owned(r)), c.out);
  return kOk;
}

int cmd_vp(const Config& c) {
  const Polytope p = load_polytope(c);
  const int d = dim_of(p);
  double vp = 0, bound = 0, vol = 0;
  check(sl_volume_product(p.p, &c.tol, &vp));
  check(sl_simplex_bound(d, &bound));
  check(sl_polytope_volume(p.p, &vol));
  json out{{"tolerances", {{"geom", c.tol.geom}, {"sant", c.tol.sant}, {"conv", c.tol.conv},
                           {"ratio", c.tol.ratio}, {"vol", c.tol.vol}}},
           {"dim", d},
           {"volume", vol},
           {"volume_product", vp},
           {"simplex_bound", bound},
           {"margin", vp - bound}};
  emit(out.dump(2) + "\n", c.out);
  return kOk;
}

int cmd_classify(const Config& c) {
  const Polytope p = load_polytope(c);
  char* r = nullptr;
  check(sl_classify(p.p, &c.tol, &r));
  emit(pretty(owned(r)), c.out);
  return kOk;
}

int cmd_symmetrize(const Config& c) {
  const Polytope p = load_polytope(c);
  if (static_cast<int>(c.normal.size()) != dim_of(p)) {
    throw CliError{kMalformed, "--normal must have one entry per coordinate"};
  }
  char* r = nullptr;
  check(sl_symmetrize(p.p, c.normal.data(), c.offset, &c.tol, &r));
  emit(pretty(owned(r)), c.out);
  return kOk;
}

int cmd_shadow(const Config& c) {
  const System s = load_system(c);
  char* csv = nullptr;
  char* verdict = nullptr;
  int violations = 0;
  check(sl_shadow_sweep(s.s, c.grid, &c.tol, &csv, &verdict, &violations));
  emit(owned(csv), c.out);
  const std::string v = pretty(owned(verdict));
  if (c.verdict_out.empty()) {
    std::cerr << v;
  } else {
    emit(v, c.verdict_out);
  }
  return violations > 0 ? kViolation : kOk;
}

int cmd_verify(const Config& c) {
  const System s = load_system(c);
  double lo = 0, hi = 0;
  check(sl_system_interval(s.s, &lo, &hi));
  char* r = nullptr;
  int violations = 0;
  check(sl_verify_chain(s.s, c.s.value_or(lo), c.t.value_or(hi), c.grid, &c.tol, &r, &violations));
  emit(pretty(owned(r)), c.out);
  return violations > 0 ? kViolation : kOk;
}

int cmd_search(const Config& c) {
  if (!c.seed) throw CliError{kMalformed, "search requires --seed"};
  auto line = [](const char* text, void*) {
    std::cout << text << '\n';
    std::cout.flush();
  };
  char* r = nullptr;
  int violations = 0;
  check(sl_search(c.d, c.k, c.trials, *c.seed, line, nullptr, &r, &violations));
  const std::string report = owned(r);
  std::cout << report << '\n';
  if (!c.out.empty()) emit(pretty(report), c.out);
  return violations > 0 ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar bodies, Santalo points and volume products of convex polytopes."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "santalo_lab 0.1.0");
  app.footer(
      "Exit codes: 0 ok, 1 internal error, 2 malformed input, 3 geometric precondition failure,\n"
      "4 violation found (shadow, verify, search).\n"
      "SANTALO_LAB_THREADS caps the worker threads used by search.");

  Config c;
  app.add_option("--tol.geom", c.tol.geom, "Geometric tolerance")->capture_default_str();
  app.add_option("--tol.sant", c.tol.sant, "Santalo solver tolerance")->capture_default_str();
  app.add_option("--tol.conv", c.tol.conv, "Inverse polar convexity tolerance")->capture_default_str();
  app.add_option("--tol.ratio", c.tol.ratio, "Balanced point ratio tolerance")->capture_default_str();
  app.add_option("--tol.vol", c.tol.vol, "Volume tolerance")->capture_default_str();
  app.add_option("--out", c.out, "Write the main output here instead of stdout");

  auto with_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", c.input, what)->required();
    sub->fallthrough();
    return sub;
  };

  CLI::App* polar = with_input(app.add_subcommand("polar", "Polar body about a centre"), "Polytope JSON file or -");
  polar->add_option("--center", c.center, "Polarity centre, comma separated (default: Santalo point)")
      ->delimiter(',');
  with_input(app.add_subcommand("santalo", "Santalo point and polar volume"), "Polytope JSON file or -");
  with_input(app.add_subcommand("vp", "Volume product against the simplex bound"), "Polytope JSON file or -");
  with_input(app.add_subcommand("classify", "Vertex configuration class (at most d+3 vertices)"),
             "Polytope JSON file or -");
  CLI::App* sym = with_input(app.add_subcommand("symmetrize", "Steiner symmetral about a hyperplane"),
                             "Polytope JSON file or -");
  sym->add_option("--normal", c.normal, "Hyperplane normal, comma separated")->delimiter(',')->required();
  sym->add_option("--offset", c.offset, "Hyperplane offset")->capture_default_str();

  CLI::App* shadow = with_input(app.add_subcommand("shadow", "Sweep a shadow system; CSV out, verdict JSON to stderr"),
                                "Shadow system JSON file or -");
  shadow->add_option("--grid", c.grid, "Number of parameters")->capture_default_str()->check(CLI::Range(3, 100000));
  shadow->add_option("--verdict-out", c.verdict_out, "Write the verdict JSON here instead of stderr");

  CLI::App* verify = with_input(app.add_subcommand("verify", "Slice-profile chain at (s, (s+t)/2, t)"),
                                "Shadow system JSON file or -");
  verify->add_option("--grid", c.grid, "Hypothesis grid per axis")->capture_default_str()->check(CLI::Range(2, 4097));
  verify->add_option("--s", c.s, "First parameter (default: interval start)");
  verify->add_option("--t", c.t, "Second parameter (default: interval end)");

  CLI::App* search = app.add_subcommand("search", "Seeded random campaign against the simplex bound");
  search->fallthrough();
  search->add_option("--seed", c.seed, "Campaign seed")->required();
  search->add_option("--d", c.d, "Dimension (2..4)")->capture_default_str();
  search->add_option("--k", c.k, "Vertex count (d+1..d+3); 0 with --d 2 samples 3..12-gons")->capture_default_str();
  search->add_option("--trials", c.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*polar) return cmd_polar(c);
    if (app.got_subcommand("santalo")) return cmd_santalo(c);
    if (app.got_subcommand("vp")) return cmd_vp(c);
    if (app.got_subcommand("classify")) return cmd_classify(c);
    if (*sym) return cmd_symmetrize(c);
    if (*shadow) return cmd_shadow(c);
    if (*verify) return cmd_verify(c);
    if (*search) return cmd_search(c);
  } catch (const CliError& e) {
    std::cerr << "santalo_lab: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "santalo_lab: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
