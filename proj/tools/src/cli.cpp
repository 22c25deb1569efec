#include "heightlab_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "heightlab/asymptotics.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/invariants.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/text_io.hpp"
#include "heightlab_cli/json_io.hpp"

namespace heightlab::cli {

namespace {

struct RunConfig {
  std::string field = "Q";
  double tol = kDefaultTolerance;
  unsigned jmax = 12;
  std::optional<double> bound;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string format = "auto";
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : format_(cfg.format) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw UsageError("cannot open " + cfg.out);
    }
    os_ = cfg.out.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *os_; }
  const std::string& format() const { return format_; }

  void document(const json& j) {
    if (format_ == "text") {
      text(j, "");
    } else {
      *os_ << j.dump(2) << "\n";
    }
  }
  void line(const json& j) {
    if (format_ == "text") {
      text(j, "");
      *os_ << "\n";
    } else {
      *os_ << j.dump() << "\n";
    }
  }

 private:
  void text(const json& j, const std::string& prefix) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        const bool leaf = !v.is_object() || (v.contains("exactness") && v.size() <= 4);
        if (leaf) {
          *os_ << prefix << k << ": " << scalar(v) << "\n";
        } else {
          *os_ << prefix << k << ":\n";
          text(v, prefix + "  ");
        }
      }
    } else {
      *os_ << prefix << scalar(j) << "\n";
    }
  }
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("value")) {
      return v["value"].is_string() ? v["value"].get<std::string>() : v["value"].dump();
    }
    return v.dump();
  }

  std::string format_;
  std::ofstream file_;
  std::ostream* os_;
};

std::string resolve_format(const RunConfig& cfg, const char* fallback) {
  return cfg.format == "auto" ? fallback : cfg.format;
}

std::size_t bit_budget() {
  const char* env = std::getenv("HEIGHTLAB_BITS_BUDGET");
  if (!env || !*env) return kDefaultBitBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError("HEIGHTLAB_BITS_BUDGET must be a positive integer");
  return static_cast<std::size_t>(v);
}

Field require_rational(const Field& f) {
  if (!f.is_rational()) throw UsageError("enumeration is available over Q only");
  return f;
}

json subspace_json(const Subspace& x) {
  json basis = json::array();
  for (const auto& b : x.basis()) basis.push_back(format_vector(b));
  return {{"ambient", x.ambient()}, {"dim", x.dim()}, {"basis", basis}, {"plucker", format_vector(x.plucker())}};
}

// -- subcommands ------------------------------------------------------------

struct HeightArgs {
  std::string vec, mat, subspace;
  bool op = false, spectral = false, sup = false;
};

int cmd_height(const RunConfig& cfg, const HeightArgs& a, Output& out) {
  const Field field = parse_field(cfg.field);
  const int given = !a.vec.empty() + !a.mat.empty() + !a.subspace.empty();
  if (given != 1) throw UsageError("height needs exactly one of --vec, --mat, --subspace");
  json j;
  j["command"] = "height";
  j["field"] = field.name();
  if (!a.vec.empty()) {
    const VectorK x = parse_vector(a.vec, field);
    const auto parts = vector_height_places(x, {}, cfg.tol);
    j["input"] = format_vector(x);
    j["kind"] = "vector";
    j["height"] = to_json(assemble(parts));
    j["places"] = to_json(parts);
  } else if (!a.subspace.empty()) {
    const auto rows = parse_rows(a.subspace, field);
    const Subspace x(field, rows.front().size(), rows);
    j["kind"] = "subspace";
    j["subspace"] = subspace_json(x);
    j["height"] = to_json(height_subspace(x));
  } else {
    const MatrixK t = parse_matrix(a.mat, field);
    j["input"] = format_matrix(t);
    if (a.op + a.spectral + a.sup > 1) throw UsageError("--op, --spectral and --sup are exclusive");
    if (a.op) {
      OperatorHeightOptions opts;
      opts.search_bound = cfg.bound.value_or(opts.search_bound);
      opts.tol = cfg.tol;
      opts.workers = cfg.workers;
      j["kind"] = "operator";
      j["result"] = to_json(height_operator(t, opts));
    } else if (a.sup) {
      const double bound = cfg.bound.value_or(3.0);
      const SupResult s = kernel_quotient_sup(t, bound, cfg.workers);
      j["kind"] = "sup";
      j["bound"] = bound;
      j["points"] = s.points;
      if (s.witness) {
        j["value"] = to_json(s.value);
        j["witness"] = format_vector(*s.witness);
      }
      j["upper"] = to_json(height_matrix(t, cfg.tol));
    } else if (a.spectral) {
      const auto parts = spectral_height_places(t, cfg.tol);
      j["kind"] = "spectral";
      j["height"] = to_json(assemble(parts));
      j["places"] = to_json(parts);
    } else {
      const auto parts = matrix_height_places(t, cfg.tol);
      j["kind"] = "matrix";
      j["height"] = to_json(assemble(parts));
      j["places"] = to_json(parts);
    }
  }
  out.document(j);
  return kOk;
}

struct GelfandArgs {
  std::string mat, local;
};

int cmd_gelfand(const RunConfig& cfg, const GelfandArgs& a, Output& out) {
  const Field field = parse_field(cfg.field);
  if (a.mat.empty()) throw UsageError("gelfand needs --mat");
  const MatrixK t = parse_matrix(a.mat, field);
  GelfandOptions opts;
  opts.bit_budget = bit_budget();
  opts.tol = cfg.tol;
  const ConvergenceTrace trace =
      a.local.empty() ? gelfand_sequence(t, cfg.jmax, opts) : local_gelfand_sequence(t, parse_place(a.local, field), cfg.jmax, opts);
  if (out.format() == "csv") {
    write_csv(out.stream(), trace);
  } else {
    json j = to_json(trace);
    j["command"] = "gelfand";
    j["input"] = format_matrix(t);
    if (!a.local.empty()) j["place"] = a.local;
    out.document(j);
  }
  return trace.truncated ? kResource : kOk;
}

struct EnumArgs {
  std::optional<std::size_t> points, invertible, rank1, middle;
  std::optional<unsigned long> rank1_demo;
  double kernel_cap = 1.0;
};

int cmd_enum(const RunConfig& cfg, const EnumArgs& a, Output& out) {
  require_rational(parse_field(cfg.field));
  const int given = a.points.has_value() + a.invertible.has_value() + a.rank1.has_value() + a.middle.has_value() +
                    a.rank1_demo.has_value();
  if (given != 1) throw UsageError("enum needs exactly one of --points, --invertible, --rank1, --middle, --rank1-demo");
  if (a.rank1_demo) {
    for (const auto& row : rank1_unbounded_demo(*a.rank1_demo)) {
      out.line({{"index", row.index},
                {"matrix", format_matrix(row.matrix)},
                {"opHeight", to_json(row.op_height)},
                {"kernelHeight", to_json(row.kernel_height)}});
    }
    return kOk;
  }
  if (!cfg.bound) throw UsageError("enum needs --bound");
  const double b = *cfg.bound;
  if (a.points) {
    for (const auto& p : enum_projective_points(*a.points, b, cfg.workers)) out.line(to_json(p));
    return kOk;
  }
  std::vector<EndoClass> classes;
  if (a.invertible) classes = enum_invertible_endos(*a.invertible, b, cfg.workers);
  if (a.rank1) classes = enum_rank1_endos(*a.rank1, b, a.kernel_cap, cfg.workers);
  if (a.middle) classes = scan_middle_rank(*a.middle, b, cfg.workers);
  for (const auto& c : classes) out.line(to_json(c));
  return kOk;
}

struct VerifyArgs {
  std::size_t samples = 100;
  std::string config;
  std::vector<std::string> checks;
};

void apply_config(const std::string& path, InvariantThresholds& th) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  for (const auto& [k, v] : j.items()) {
    if (k == "archTol") th.arch_tol = v.get<double>();
    else if (k == "extensionTol") th.extension_tol = v.get<double>();
    else if (k == "gelfandResidual") th.gelfand_residual = v.get<double>();
    else if (k == "gelfandJmax") th.gelfand_jmax = v.get<unsigned>();
    else if (k == "maxPower") th.max_power = v.get<unsigned>();
    else if (k == "operatorSearchBound") th.operator_search_bound = v.get<double>();
    else throw UsageError("unknown config key '" + k + "'");
  }
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& a, Output& out, std::ostream& err) {
  SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.samples = a.samples;
  sc.workers = cfg.workers;
  sc.checks = a.checks;
  sc.thresholds.gelfand_jmax = cfg.jmax;
  if (!a.config.empty()) apply_config(a.config, sc.thresholds);
  const SuiteReport report = run_invariant_suite(sc);

  if (out.format() == "text") {
    std::ostringstream os;
    os << "check                        cases  failures  max_dev\n";
    for (const auto& c : report.checks) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-28s %5zu  %8zu  %.3g\n", c.name.c_str(), c.cases, c.failures, c.max_deviation);
      os << buf;
    }
    os << (report.ok() ? "all checks passed\n" : "FAILED\n");
    out.stream() << os.str();
  } else {
    json checks = json::array();
    for (const auto& c : report.checks) {
      json x{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"maxDeviation", c.max_deviation}};
      if (c.witness) x["witness"] = *c.witness;
      checks.push_back(x);
    }
    out.document({{"command", "verify"}, {"seed", cfg.seed}, {"samples", a.samples}, {"checks", checks}, {"ok", report.ok()}});
  }
  for (const auto& c : report.checks) {
    if (c.witness) err << c.name << ": " << *c.witness << "\n";
  }
  return report.ok() ? kOk : kInvariantFailure;
}

int cmd_demo_pseudo_height(const RunConfig&, const std::string& primes, Output& out) {
  json rows = json::array();
  for (const auto& q : parse_integer_list(primes)) {
    const PseudoHeightDemo d = pseudo_height_demo(q);
    const double expected = std::sqrt(mpq_class(q * q + 1).get_d());
    rows.push_back({{"q", q.get_str()},
                    {"pseudoHeight", to_json(d.pseudo)},
                    {"standardHeight", to_json(d.standard)},
                    {"ratio", {{"value", d.ratio}, {"relErr", d.standard.rel_err()}, {"exactness", "float+relErr"}}},
                    {"sqrtQ2Plus1", expected}});
  }
  out.document({{"command", "demo-remark"}, {"rows", rows}});
  return kOk;
}

struct TwistArgs {
  std::string vec, global;
  std::vector<std::string> twists;
  std::size_t samples = 0;
};

int cmd_twist(const RunConfig& cfg, const TwistArgs& a, Output& out) {
  const Field field = parse_field(cfg.field);
  TwistSpec spec;
  if (!a.global.empty()) spec = TwistSpec::global(parse_matrix(a.global, field));
  for (const auto& t : a.twists) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--twist expects PLACE=MATRIX");
    spec.add(parse_place(t.substr(0, eq), field), parse_matrix(t.substr(eq + 1), field));
  }
  if (spec.empty()) throw UsageError("twist needs --twist or --global");
  json j;
  j["command"] = "twist";
  json places = json::array();
  for (const auto& [v, m] : spec.twists()) places.push_back({{"place", v.label()}, {"matrix", format_matrix(m)}});
  j["twists"] = places;
  if (!a.vec.empty()) {
    const VectorK x = parse_vector(a.vec, field);
    const auto parts = vector_height_places(x, spec, cfg.tol);
    j["input"] = format_vector(x);
    j["twisted"] = to_json(assemble(parts));
    j["standard"] = to_json(height_vector(x));
    j["places"] = to_json(parts);
  }
  if (a.samples > 0) {
    const std::size_t n = spec.twists().begin()->second.dim();
    const ComparisonInterval c = comparison_constant(spec, field, n, a.samples, cfg.seed);
    j["comparison"] = {{"cMin", c.c_min}, {"cMax", c.c_max}, {"samples", c.samples}};
  }
  out.document(j);
  return kOk;
}

struct SubspaceArgs {
  std::string basis, vec;
};

int cmd_dist(const RunConfig& cfg, const SubspaceArgs& a, Output& out, bool full) {
  const Field field = parse_field(cfg.field);
  if (a.basis.empty()) throw UsageError("missing --subspace");
  const auto rows = parse_rows(a.basis, field);
  const Subspace x(field, rows.front().size(), rows);
  json j;
  j["command"] = full ? "subspace" : "dist";
  j["subspace"] = subspace_json(x);
  j["height"] = to_json(height_subspace(x));
  if (a.vec.empty()) {
    if (!full) throw UsageError("dist needs --vec");
    out.document(j);
    return kOk;
  }
  const VectorK y = parse_vector(a.vec, field);
  j["input"] = format_vector(y);
  j["contains"] = x.contains(y);
  if (x.contains(y)) throw DegenerateInputError("vector lies in the subspace");
  const HeightValue d = distance(y, x);
  const HeightValue s = distance_via_span(y, x);
  j["distance"] = to_json(d);
  j["viaSpan"] = to_json(s);
  j["agree"] = std::fabs(d.log() - s.log()) <= cfg.tol;
  if (full) {
    j["spanHeight"] = to_json(height_subspace(x.extended_by(y)));
    const long coeff = static_cast<long>(std::floor(cfg.bound.value_or(2.0)));
    const ApproximationRatio r = approximation_ratio(y, x, coeff);
    j["approximationRatio"] = {{"value", r.ratio}, {"x", format_vector(*r.best)}, {"tried", r.tried},
                               {"exactness", "float+relErr"}, {"relErr", d.rel_err()}};
  }
  out.document(j);
  return std::fabs(d.log() - s.log()) <= cfg.tol ? kOk : kInvariantFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heights on K^n and End(K^n) for Q and quadratic fields", "heightlab"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--field", cfg.field, "Q, Q(i), Q(sqrtM)");
  app.add_option("--tol", cfg.tol, "archimedean tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jmax", cfg.jmax, "largest j in k = 2^j");
  app.add_option("--bound", cfg.bound, "height bound");
  app.add_option("--seed", cfg.seed);
  app.add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format)->check(CLI::IsMember({"auto", "json", "csv", "text"}));
  app.add_option("--out", cfg.out, "write output to this file");

  HeightArgs ha;
  auto* height = app.add_subcommand("height", "vector, matrix, spectral, operator and subspace heights");
  height->add_option("--vec", ha.vec);
  height->add_option("--mat", ha.mat);
  height->add_option("--subspace", ha.subspace, "basis rows");
  height->add_flag("--op", ha.op, "operator height");
  height->add_flag("--spectral", ha.spectral, "spectral height");
  height->add_flag("--sup", ha.sup, "max H(Ty)/d_X(y) over points of height <= bound");

  GelfandArgs ga;
  auto* gelfand = app.add_subcommand("gelfand", "H(T^k)^(1/k) or ||T^k||_v^(1/k) at k = 2^j");
  gelfand->add_option("--mat", ga.mat)->required();
  gelfand->add_option("--local", ga.local, "place: p, p:b, inf, inf'");

  EnumArgs ea;
  auto* enumerate = app.add_subcommand("enum", "bounded-height enumeration over Q");
  enumerate->add_option("--points", ea.points, "n");
  enumerate->add_option("--invertible", ea.invertible, "n");
  enumerate->add_option("--rank1", ea.rank1, "n");
  enumerate->add_option("--middle", ea.middle, "n (not certified)");
  enumerate->add_option("--rank1-demo", ea.rank1_demo, "count");
  enumerate->add_option("--kernel-cap", ea.kernel_cap);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "seeded invariant suite");
  verify->add_option("--samples", va.samples);
  verify->add_option("--config", va.config, "JSON threshold overrides");
  verify->add_option("--checks", va.checks)->delimiter(',');

  std::string primes = "2,3,5,101,10007";
  auto* demo = app.add_subcommand("demo-remark", "pseudo-height of (q, 1) for a non-adelic family");
  demo->add_option("--primes", primes);

  TwistArgs ta;
  auto* twist = app.add_subcommand("twist", "twisted heights");
  twist->add_option("--vec", ta.vec);
  twist->add_option("--twist", ta.twists, "PLACE=MATRIX");
  twist->add_option("--global", ta.global, "MATRIX applied at every place");
  twist->add_option("--samples", ta.samples, "sample the comparison constant");

  SubspaceArgs da;
  auto* dist = app.add_subcommand("dist", "d_X(y)");
  dist->add_option("--vec", da.vec);
  dist->add_option("--subspace", da.basis);

  SubspaceArgs sa;
  auto* subspace = app.add_subcommand("subspace", "Pluecker data, H(X) and approximation of y by X");
  subspace->add_option("--subspace,--basis", sa.basis);
  subspace->add_option("--vec", sa.vec);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gelfand) cfg.format = resolve_format(cfg, "csv");
    else cfg.format = resolve_format(cfg, "json");
    if (cfg.format == "csv" && !*gelfand) throw UsageError("csv output is only available for gelfand");
    Output o(cfg, out);
    if (*height) return cmd_height(cfg, ha, o);
    if (*gelfand) return cmd_gelfand(cfg, ga, o);
    if (*enumerate) return cmd_enum(cfg, ea, o);
    if (*verify) return cmd_verify(cfg, va, o, err);
    if (*demo) return cmd_demo_pseudo_height(cfg, primes, o);
    if (*twist) return cmd_twist(cfg, ta, o);
    if (*dist) return cmd_dist(cfg, da, o, false);
    if (*subspace) return cmd_dist(cfg, sa, o, true);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateInputError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << " (bracket [" << e.lower() << ", " << e.upper() << "])\n";
    return kInvariantFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace heightlab::cli
