#include "ldirac/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "ldirac/grid.hpp"
#include "ldirac/report_io.hpp"
#include "ldirac/states.hpp"
#include "ldirac/verify.hpp"

namespace ldirac::cli {

namespace {

struct RunConfig {
  int dim = 1;
  double k = 1.0;
  double q = 1.0;
  double mass = 0.0;
  double hbar = 1.0;
  double c = 1.0;
  std::string branch = "+";
  std::string spin = "up";
  int m_ang = 0;
  std::string j = "1/2";
  std::string mj = "1/2";
  std::string mode;
  std::string profile;
  std::size_t grid_points = 0;
  std::string format;
  std::string out;
  std::string k_list = "0,1,5";
  std::string q_list = "0.1,1,10";
  std::string report_file;
};

constexpr std::size_t kThetaNodes3D = 9;
constexpr std::size_t kPhiNodes3D = 8;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_state_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--dim", cfg.dim, "Dimension")->check(CLI::IsMember({1, 2, 3}));
  app->add_option("--k", cfg.k, "Wave number k >= 0");
  app->add_option("--q", cfg.q, "Envelope parameter q > 0");
  app->add_option("--mass", cfg.mass, "Rest mass >= 0");
  app->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
  app->add_option("--c", cfg.c, "Speed of light");
  app->add_option("--branch", cfg.branch, "Energy branch")->check(CLI::IsMember({"+", "-"}));
  app->add_option("--spin", cfg.spin, "1D spin")->check(CLI::IsMember({"up", "down"}));
  app->add_option("--m-ang", cfg.m_ang, "2D orbital quantum number m >= 0");
  app->add_option("--j", cfg.j, "3D total angular momentum (e.g. 3/2)");
  app->add_option("--mj", cfg.mj, "3D projection (e.g. -1/2)");
  app->add_option("--mode", cfg.mode, "Amplitude convention")->check(CLI::IsMember({"paper", "derived", "auto"}));
  app->add_option("--profile", cfg.profile, "Verification profile (verify: fast, sweep: strict)")->check(CLI::IsMember({"fast", "strict"}));
  app->add_option("--grid-points", cfg.grid_points, "Nodes per axis (odd, >= 65)");
  app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", cfg.out, "Output path");
}

PhysParams physical(const RunConfig& cfg) {
  PhysParams p{cfg.hbar, cfg.c, cfg.mass, cfg.q};
  p.validate();
  return p;
}

states::EnergyBranch branch_of(const RunConfig& cfg) {
  return cfg.branch == "-" ? states::EnergyBranch::negative : states::EnergyBranch::positive;
}

states::AmplitudeMode mode_of(const RunConfig& cfg) {
  if (cfg.mode == "paper") return states::AmplitudeMode::paper;
  if (cfg.dim == 2 && (cfg.mode.empty() || cfg.mode == "auto")) return states::AmplitudeMode::auto_fit;
  return states::AmplitudeMode::derived;
}

verify::StateRequest request_of(const RunConfig& cfg) {
  verify::StateRequest rq;
  rq.dim = cfg.dim;
  rq.k = cfg.k;
  rq.branch = branch_of(cfg);
  rq.spin = cfg.spin == "down" ? states::Spin::down : states::Spin::up;
  rq.m_ang = cfg.m_ang;
  rq.two_j = parse_half_integer_twice(cfg.j);
  rq.two_m = parse_half_integer_twice(cfg.mj);
  rq.mode = mode_of(cfg);
  return rq;
}

std::string output_path(const RunConfig& cfg, const std::string& stem, const std::string& fmt) {
  return cfg.out.empty() ? stem + "." + fmt : cfg.out;
}

void write_output(const std::string& path, const std::string& content) {
  try {
    io::write_atomic(path, content);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

void push_components(std::vector<double>& row, const cplx* v, std::size_t n) {
  double density = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    row.push_back(v[i].real());
    row.push_back(v[i].imag());
    density += std::norm(v[i]);
  }
  row.push_back(density);
}

io::Table sample_table(const RunConfig& cfg) {
  const PhysParams p = physical(cfg);
  const verify::StateRequest rq = request_of(cfg);
  const double radius = p.truncation_radius();
  io::Table t;
  if (cfg.dim == 1) {
    const std::size_t n = cfg.grid_points ? cfg.grid_points : 1001;
    const states::State1D s = states::construct_1d(p, rq.k, rq.spin, rq.branch, rq.mode);
    const ops::Grid1D g = ops::Grid1D::symmetric(radius, n);
    t.columns = {"z", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "re_psi3", "im_psi3", "re_psi4", "im_psi4",
                 "density"};
    for (std::size_t i = 0; i < g.n; ++i) {
      const spin::Spinor4 v = s(g.x(i));
      std::vector<double> row{g.x(i)};
      push_components(row, v.data(), 4);
      t.rows.push_back(std::move(row));
    }
  } else if (cfg.dim == 2) {
    const std::size_t n = cfg.grid_points ? cfg.grid_points : 101;
    const states::State2D s = states::construct_2d(p, rq.k, rq.m_ang, rq.branch, rq.mode);
    const ops::Grid2D g = ops::Grid2D::square(radius, n);
    t.columns = {"x", "y", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "density"};
    for (std::size_t iy = 0; iy < g.y.n; ++iy) {
      for (std::size_t ix = 0; ix < g.x.n; ++ix) {
        const double x = g.x.x(ix);
        const double y = g.y.x(iy);
        const spin::Spinor2 v = s(x, y);
        std::vector<double> row{x, y};
        push_components(row, v.data(), 2);
        t.rows.push_back(std::move(row));
      }
    }
  } else {
    const std::size_t n = cfg.grid_points ? cfg.grid_points : 201;
    if (n < 2) throw std::invalid_argument("--grid-points must be at least 2 in 3D");
    const auto qn = spin::AngularQuantumNumbers::from_twice(rq.two_j, rq.two_m);
    const states::State3D s = states::construct_3d(p, rq.k, qn, rq.branch, rq.mode);
    t.columns = {"r",       "theta",   "phi",     "re_psi1", "im_psi1", "re_psi2", "im_psi2",
                 "re_psi3", "im_psi3", "re_psi4", "im_psi4", "density"};
    for (std::size_t ir = 0; ir < n; ++ir) {
      const double r = radius * static_cast<double>(ir) / static_cast<double>(n - 1);
      for (std::size_t it = 0; it < kThetaNodes3D; ++it) {
        const double theta = kPi * static_cast<double>(it) / static_cast<double>(kThetaNodes3D - 1);
        for (std::size_t ip = 0; ip < kPhiNodes3D; ++ip) {
          const double phi = 2.0 * kPi * static_cast<double>(ip) / static_cast<double>(kPhiNodes3D);
          const spin::Spinor4 v = s(r, theta, phi);
          std::vector<double> row{r, theta, phi};
          push_components(row, v.data(), 4);
          t.rows.push_back(std::move(row));
        }
      }
    }
  }
  return t;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  const io::Table t = sample_table(cfg);
  const std::string path = output_path(cfg, "state", fmt);
  write_output(path, fmt == "csv" ? io::table_csv(t) : io::table_json(t));
  out << "construct: wrote " << t.rows.size() << " rows to " << path << "\n";
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  const PhysParams p = physical(cfg);
  const verify::Profile profile = cfg.profile == "strict" ? verify::Profile::strict : verify::Profile::fast;
  std::optional<std::size_t> n;
  if (cfg.grid_points) n = cfg.grid_points;
  const verify::VerificationReport rep = verify::verify_state(request_of(cfg), p, profile, n);
  const std::string path = output_path(cfg, "report", fmt);
  write_output(path, fmt == "json" ? io::report_json(rep) : io::report_csv(rep));
  std::size_t failed = 0, informative = 0;
  for (const auto& c : rep.checks) {
    if (c.informative) ++informative;
    else if (!c.passed) ++failed;
  }
  out << "verify: " << (rep.overall ? "PASS" : "FAIL") << " (" << rep.checks.size() << " checks, " << failed
      << " failed, " << informative << " informative, " << rep.paper_notes.size() << " notes) -> " << path << "\n";
  return rep.overall ? kPass : kFail;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item(text.data() + start, end - start);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw std::invalid_argument(std::string(flag) + ": bad entry '" + std::string(item) + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  if (out.empty()) throw std::invalid_argument(std::string(flag) + " is empty");
  return out;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  const verify::Profile profile = cfg.profile == "fast" ? verify::Profile::fast : verify::Profile::strict;
  const verify::SweepResult s = verify::dispersion_sweep(cfg.dim, parse_list(cfg.k_list, "--k-list"),
                                                         parse_list(cfg.q_list, "--q-list"), cfg.mass, profile,
                                                         cfg.hbar, cfg.c);
  const std::string path = output_path(cfg, "sweep", fmt);
  write_output(path, fmt == "csv" ? io::sweep_csv(s) : io::sweep_json(s));
  out << "sweep: " << (s.all_pass ? "PASS" : "FAIL") << " (" << s.rows.size() << " rows, E "
      << (s.q_independent ? "identical" : "NOT identical") << " across q) -> " << path << "\n";
  return s.all_pass ? kPass : kFail;
}

int cmd_check_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = io::read_file(cfg.report_file);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  const io::ReportValidation v = io::validate_report_json(text);
  if (!v.well_formed || !v.consistent) {
    err << "check-report: " << v.message << "\n";
    return kUsage;
  }
  out << "check-report: " << (v.overall ? "PASS" : "FAIL") << " (" << v.message << ")\n";
  return v.overall ? kPass : kFail;
}

}  // namespace

int parse_half_integer_twice(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_double = [&](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
  };
  const std::string_view sv(text);
  double value = 0.0;
  if (slash == std::string::npos) {
    value = parse_double(sv);
  } else {
    const double num = parse_double(sv.substr(0, slash));
    const double den = parse_double(sv.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    value = num / den;
  }
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (!std::isfinite(twice) || std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6 ||
      static_cast<long long>(rounded) % 2 == 0) {
    throw std::invalid_argument("'" + text + "' is not a half-odd-integer");
  }
  return static_cast<int>(rounded);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Localized eigenstates of the wave-packing Dirac equation: construction and verification",
               "ldirac"};
  app.require_subcommand(1);
  CLI::App* construct = app.add_subcommand("construct", "Sample a state on a grid");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the verification suite for one state");
  CLI::App* sweep = app.add_subcommand("sweep", "Dispersion table over k and q lists");
  CLI::App* check = app.add_subcommand("check-report", "Re-derive the verdict of a JSON report");
  add_state_options(construct, cfg);
  add_state_options(verify_cmd, cfg);
  add_state_options(sweep, cfg);
  sweep->add_option("--k-list", cfg.k_list, "Comma-separated wave numbers")->capture_default_str();
  sweep->add_option("--q-list", cfg.q_list, "Comma-separated envelope parameters")->capture_default_str();
  check->add_option("report", cfg.report_file, "Report file (JSON)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    return cmd_check_report(cfg, out, err);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace ldirac::cli
