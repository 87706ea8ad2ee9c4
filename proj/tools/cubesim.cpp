#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubesim/cubesim.hpp"

namespace {

using cubesim::io::Json;

constexpr int kMinPaths = 2;
constexpr int kMaxPaths = cubesim::kMaxPaths;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, pretty };

struct RunConfig {
  double tolerance = cubesim::Tolerance::kDefault;
  Format format = Format::json;
  std::string out_path;
  std::string n_spec;
  std::optional<std::uint64_t> seed;
};

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// "4", "2,3,4,10" or "3..8".
std::vector<int> parse_n_spec(const std::string& spec) {
  std::vector<int> ns;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const int lo = parse_int(spec.substr(0, dots));
    const int hi = parse_int(spec.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range: " + spec);
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) ns.push_back(parse_int(item));
  }
  if (ns.empty()) throw UsageError("no path counts given");
  for (int n : ns) {
    if (n < kMinPaths || n > kMaxPaths) {
      throw UsageError("path count " + std::to_string(n) + " outside [" + std::to_string(kMinPaths) + ", " +
                       std::to_string(kMaxPaths) + "]");
    }
  }
  return ns;
}

double resolve_tolerance(const CLI::Option* flag, double flag_value) {
  double tol = cubesim::Tolerance::kDefault;
  if (flag->count() > 0) {
    tol = flag_value;
  } else if (const char* env = std::getenv("CUBESIM_TOL")) {
    try {
      std::size_t used = 0;
      tol = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CUBESIM_TOL is not a number: '") + env + "'");
    }
  }
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  return tol;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw cubesim::Error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

std::string fixed(double x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

void emit_ifm(const RunConfig& cfg, const std::vector<cubesim::IFMResult>& results, const Json& extra) {
  Output out(cfg.out_path);
  auto& os = out.stream();
  switch (cfg.format) {
    case Format::csv:
      cubesim::io::write_ifm_csv(os, results);
      break;
    case Format::pretty:
      os << std::left << std::setw(9) << "model" << std::setw(4) << "N" << std::setw(16) << "P_*" << std::setw(16)
         << "P_?" << std::setw(16) << "P_!" << "bound\n";
      for (const auto& r : results) {
        os << std::setw(9) << cubesim::to_string(r.model) << std::setw(4) << r.n_paths << std::setw(16)
           << fixed(r.p_trigger) << std::setw(16) << fixed(r.p_inconclusive) << std::setw(16) << fixed(r.p_success)
           << fixed(r.bound_value) << (r.support_ambiguous ? "  (support near threshold)" : "") << '\n';
      }
      break;
    case Format::json: {
      Json arr = Json::array();
      for (const auto& r : results) {
        Json j = cubesim::io::ifm_to_json(r);
        if (extra.contains(std::to_string(r.n_paths))) j["clicks"] = extra.at(std::to_string(r.n_paths));
        arr.push_back(std::move(j));
      }
      emit_json(os, arr.size() == 1 ? arr.at(0) : arr);
      break;
    }
  }
}

int cmd_reproduce(const RunConfig& cfg, bool corrupt) {
  cubesim::ReproduceOptions opt;
  opt.corrupt_reference = corrupt;
  if (cfg.seed) opt.seed = *cfg.seed;
  const auto checks = cubesim::reproduce_checks(opt);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;

  Output out(cfg.out_path);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    Json arr = Json::array();
    for (const auto& c : checks) {
      arr.push_back({{"location", c.location},
                     {"quantity", c.quantity},
                     {"computed", c.computed},
                     {"expected", c.expected},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
    }
    emit_json(os, {{"checks", arr}, {"all_pass", all}});
  } else if (cfg.format == Format::csv) {
    os << "location,quantity,computed,expected,tolerance,pass\n";
    for (const auto& c : checks) {
      os << '"' << c.location << "\",\"" << c.quantity << "\"," << cubesim::io::format_double(c.computed) << ','
         << cubesim::io::format_double(c.expected) << ',' << cubesim::io::format_double(c.tolerance) << ','
         << (c.pass ? "pass" : "FAIL") << '\n';
    }
  } else {
    for (const auto& c : checks) {
      os << (c.pass ? "pass  " : "FAIL  ") << std::left << std::setw(26) << c.location << std::setw(58) << c.quantity
         << std::setw(16) << fixed(c.computed, 10) << "expected " << fixed(c.expected, 10) << '\n';
    }
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.pass ? 0 : 1;
    os << checks.size() - failed << "/" << checks.size() << " checks pass\n";
  }
  return all ? 0 : 1;
}

int cmd_ifm(const RunConfig& cfg, const std::string& model, const std::string& preset, std::uint64_t shots) {
  const cubesim::Tolerance tol(cfg.tolerance);
  const auto ns = parse_n_spec(cfg.n_spec);
  if (shots > 0 && !cfg.seed) throw UsageError("--shots requires --seed");
  std::vector<cubesim::IFMResult> results;
  for (int n : ns) {
    if (model == "cube") {
      results.push_back(cubesim::run_cube_ifm(n, tol));
    } else if (preset == "elitzur-vaidman") {
      if (n != 2) throw UsageError("the elitzur-vaidman preset has two paths");
      results.push_back(cubesim::elitzur_vaidman_ifm(tol));
    } else {
      results.push_back(cubesim::fourier_ifm(n, tol));
    }
  }
  Json clicks = Json::object();
  if (shots > 0) {
    for (const auto& r : results) {
      const auto c = cubesim::sample_clicks(r, shots, *cfg.seed);
      clicks[std::to_string(r.n_paths)] = {{"shots", shots},
                                           {"seed", *cfg.seed},
                                           {"triggered", c.triggered},
                                           {"inconclusive", c.inconclusive},
                                           {"success", c.success}};
    }
  }
  emit_ifm(cfg, results, clicks);
  return 0;
}

int cmd_scan(const RunConfig& cfg, int grid) {
  if (grid < 2) throw UsageError("--grid must be at least 2");
  const auto rows = cubesim::region_scan(parse_n_spec(cfg.n_spec), grid);
  Output out(cfg.out_path);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back({{"n", r.n_paths}, {"p_trigger", r.p_trigger}, {"bound", r.bound}});
    emit_json(os, arr);
  } else {
    cubesim::io::write_region_csv(os, rows);
  }
  return 0;
}

int cmd_sorkin(const RunConfig& cfg, int port, const std::string& cube_path) {
  const cubesim::Tolerance tol(cfg.tolerance);
  const auto ns = parse_n_spec(cfg.n_spec);
  if (ns.size() != 1 || ns.front() != 3) throw UsageError("the third-order term is defined for --n 3 only");
  if (port < 1 || port > 3) throw UsageError("--port must be 1, 2 or 3");
  cubesim::HermitianCube c = cubesim::trace_optimal_cube_ifm(3, cubesim::PhaseSign::positive, tol).inside;
  if (!cube_path.empty()) {
    std::ifstream in(cube_path);
    if (!in) throw cubesim::Error("cannot read cube file '" + cube_path + "'");
    Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw cubesim::InvalidArgument(std::string("cube file is not JSON: ") + e.what());
    }
    c = cubesim::io::cube_from_json(j, cubesim::CubeRole::effect, tol);
  }
  const auto s = cubesim::sorkin_intensities(c, cubesim::assemble_multiport(3), port, tol);
  Output out(cfg.out_path);
  auto& os = out.stream();
  const std::vector<std::pair<std::string, double>> rows = {
      {"I_1", s.i1},   {"I_2", s.i2},   {"I_3", s.i3},     {"I_12", s.i12},
      {"I_13", s.i13}, {"I_23", s.i23}, {"I_123", s.i123}, {"sorkin_term", s.third_order()}};
  if (cfg.format == Format::json) {
    Json j = {{"n_paths", 3}, {"port", port}};
    for (const auto& [k, v] : rows) j[k] = v;
    emit_json(os, j);
  } else if (cfg.format == Format::csv) {
    os << "quantity,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << cubesim::io::format_double(v) << '\n';
  } else {
    for (const auto& [k, v] : rows) os << std::left << std::setw(12) << k << fixed(v) << '\n';
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto ns = parse_n_spec(cfg.n_spec);
  struct Row {
    int n;
    cubesim::MultiportReport report;
  };
  std::vector<Row> rows;
  for (int n : ns) rows.push_back({n, cubesim::verify_multiport(cubesim::assemble_multiport(n))});
  bool all = true;
  for (const auto& r : rows) all = all && r.report.passed(cubesim::kMatrixTolerance);

  Output out(cfg.out_path);
  auto& os = out.stream();
  auto fields = [](const cubesim::MultiportReport& r) {
    return std::vector<std::pair<std::string, double>>{{"hermiticity", r.hermiticity_residual},
                                                       {"involution", r.involution_residual},
                                                       {"pairing", r.pairing_violation},
                                                       {"diagonal_sum", r.diagonal_sum_drift},
                                                       {"bbt_spectrum", r.bbt_spectrum_deviation},
                                                       {"d_spectrum", r.d_spectrum_deviation}};
  };
  if (cfg.format == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j = {{"n_paths", r.n}, {"pass", r.report.passed(cubesim::kMatrixTolerance)}};
      for (const auto& [k, v] : fields(r.report)) j[k] = v;
      arr.push_back(std::move(j));
    }
    emit_json(os, arr);
  } else if (cfg.format == Format::csv) {
    os << "n_paths,hermiticity,involution,pairing,diagonal_sum,bbt_spectrum,d_spectrum,pass\n";
    for (const auto& r : rows) {
      os << r.n;
      for (const auto& [k, v] : fields(r.report)) os << ',' << cubesim::io::format_double(v);
      os << ',' << (r.report.passed(cubesim::kMatrixTolerance) ? "true" : "false") << '\n';
    }
  } else {
    for (const auto& r : rows) {
      os << "N=" << std::left << std::setw(3) << r.n << (r.report.passed(cubesim::kMatrixTolerance) ? " pass" : " FAIL")
         << "  worst residual " << fixed(r.report.worst(), 3) << '\n';
    }
  }
  return all ? 0 : 1;
}

int cmd_dump(const RunConfig& cfg, cubesim::PhaseSign sign) {
  const auto ns = parse_n_spec(cfg.n_spec);
  if (ns.size() != 1) throw UsageError("dump-matrix takes a single --n");
  const auto t = cubesim::assemble_multiport(ns.front(), sign);
  Output out(cfg.out_path);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    emit_json(os, cubesim::io::multiport_to_json(t));
  } else if (cfg.format == Format::csv) {
    const auto labels = cubesim::sub_basis(t.n_paths()).labels();
    os << "row,col,re,im\n";
    for (int r = 0; r < t.dimension(); ++r)
      for (int c = 0; c < t.dimension(); ++c)
        os << labels[r].name() << ',' << labels[c].name() << ',' << cubesim::io::format_double(t.matrix()(r, c).real())
           << ',' << cubesim::io::format_double(t.matrix()(r, c).imag()) << '\n';
  } else {
    const auto labels = cubesim::sub_basis(t.n_paths()).labels();
    for (int r = 0; r < t.dimension(); ++r) {
      os << std::left << std::setw(9) << labels[r].name();
      for (int c = 0; c < t.dimension(); ++c) {
        auto z = t.matrix()(r, c);
        if (std::abs(z.real()) < 5e-4) z.real(0.0);
        if (std::abs(z.imag()) < 5e-4) z.imag(0.0);
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(3) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
             << "i";
        os << std::right << std::setw(15) << cell.str();
      }
      os << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-cube and quantum interaction-free measurement simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  double tol_flag = cubesim::Tolerance::kDefault;
  auto* tol_opt = app.add_option("--tol", tol_flag, "Numerical tolerance (overrides CUBESIM_TOL)");
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}, {"pretty", Format::pretty}}));
  app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for random sampling");

  auto* reproduce = app.add_subcommand("reproduce", "Table of computed versus reference values");
  bool corrupt = false;
  reproduce->add_flag("--corrupt-constant", corrupt, "Perturb one stored reference value (harness self-test)");

  auto* ifm = app.add_subcommand("ifm", "Single interaction-free measurement run");
  std::string model = "cube";
  std::string preset = "fourier";
  std::uint64_t shots = 0;
  ifm->add_option("--model", model)->check(CLI::IsMember({"cube", "quantum"}));
  ifm->add_option("--preset", preset, "Quantum preset")->check(CLI::IsMember({"fourier", "elitzur-vaidman"}));
  ifm->add_option("--n", cfg.n_spec, "Path count, list (2,3,4) or range (3..8)")->required();
  ifm->add_option("--shots", shots, "Sample detector clicks (needs --seed)");

  auto* scan = app.add_subcommand("scan", "Trade-off bound curves on a P_* grid");
  int grid = 101;
  scan->add_option("--n", cfg.n_spec)->required();
  scan->add_option("--grid", grid, "Grid points on [0, 1]");

  auto* sorkin = app.add_subcommand("sorkin", "Third-order interference term");
  int port = 1;
  std::string cube_path;
  std::string sorkin_n = "3";
  sorkin->add_option("--n", sorkin_n);
  sorkin->add_option("--port", port);
  sorkin->add_option("--cube", cube_path, "Cube JSON file (default: the three-path interferometer cube)");

  auto* verify = app.add_subcommand("verify", "Residual report for assembled multiports");
  std::string verify_n = "3..8";
  verify->add_option("--n", verify_n);

  auto* dump = app.add_subcommand("dump-matrix", "Print the multiport matrix");
  cubesim::PhaseSign sign = cubesim::PhaseSign::positive;
  dump->add_option("--n", cfg.n_spec)->required();
  dump->add_option("--sign", sign, "Sign of the root-of-unity exponent")
      ->transform(CLI::CheckedTransformer(std::map<std::string, cubesim::PhaseSign>{
          {"positive", cubesim::PhaseSign::positive}, {"negative", cubesim::PhaseSign::negative}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.tolerance = resolve_tolerance(tol_opt, tol_flag);
    if (*reproduce) return cmd_reproduce(cfg, corrupt);
    if (*ifm) return cmd_ifm(cfg, model, preset, shots);
    if (*scan) return cmd_scan(cfg, grid);
    if (*sorkin) {
      cfg.n_spec = sorkin_n;
      return cmd_sorkin(cfg, port, cube_path);
    }
    if (*verify) {
      cfg.n_spec = verify_n;
      return cmd_verify(cfg);
    }
    if (*dump) return cmd_dump(cfg, sign);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
