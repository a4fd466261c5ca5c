// barrierclock: conditional traversal and dwell times for 1D piecewise
// constant barriers, with Larmor-spin and Gaussian-pointer clock
// simulations and a randomized self-verification suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "barrierclock/clock.hpp"
#include "barrierclock/io.hpp"
#include "barrierclock/oracle.hpp"
#include "barrierclock/parallel.hpp"
#include "barrierclock/verify.hpp"
#include "barrierclock/weaktimes.hpp"

namespace bc = barrierclock;
using bc::cplx;
using bc::io::fmt17;

namespace {

struct SweepSpec {
  double start = 0.0, stop = 0.0;
  int count = 1;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> s.start >> c1 >> s.stop >> c2 >> s.count) || c1 != ':' || c2 != ':' ||
      s.count < 1)
    throw CLI::ValidationError("expected start:stop:count with count >= 1: " + text);
  return s;
}

std::vector<double> sweep_values(const SweepSpec& s, bool log_spacing) {
  std::vector<double> v;
  if (s.count == 1) return {s.start};
  for (int i = 0; i < s.count; ++i) {
    const double f = static_cast<double>(i) / (s.count - 1);
    if (log_spacing)
      v.push_back(s.start * std::pow(s.stop / s.start, f));
    else
      v.push_back(s.start + f * (s.stop - s.start));
  }
  return v;
}

bc::Region parse_region(const std::string& text) {
  double x1 = 0.0, x2 = 0.0;
  char c = 0;
  std::istringstream is(text);
  if (!(is >> x1 >> c >> x2) || c != ':')
    throw CLI::ValidationError("expected x1:x2: " + text);
  return bc::Region(x1, x2);
}

bc::TimeChannel parse_channel(const std::string& name) {
  if (name == "T") return bc::TimeChannel::transmitted;
  if (name == "R") return bc::TimeChannel::reflected;
  if (name == "dwell") return bc::TimeChannel::dwell;
  throw CLI::ValidationError("channel must be T, R or dwell: " + name);
}

/// Common inputs shared by the physics commands.
struct ProblemOptions {
  std::string barrier;       // "V0,d"
  std::string profile_file;  // JSON file
  double energy = -1.0;
  double energy_frac = -1.0;  // E = frac * V0, rectangular only
  double hbar = 1.0, mass = 1.0;
  std::string region_text;
  std::string output;
  std::string plot_data;
  std::string table_format = "csv";

  bool have_barrier = false;
  double V0 = 0.0, d = 0.0;

  void add_table_format(CLI::App* cmd) {
    cmd->add_option("--format", table_format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  void add_to(CLI::App* cmd, bool need_energy = true) {
    cmd->add_option("--barrier", barrier, "rectangular barrier as V0,d");
    cmd->add_option("--profile", profile_file,
                    "JSON profile file: [{x_left,x_right,V},...] or {V0,d}");
    if (need_energy) {
      cmd->add_option("--energy", energy, "incident energy E > 0");
      cmd->add_option("--energy-frac", energy_frac,
                      "energy as a fraction of V0 (rectangular barrier only)");
    }
    cmd->add_option("--hbar", hbar, "action scale (default 1)");
    cmd->add_option("--mass", mass, "particle mass (default 1)");
    cmd->add_option("--region", region_text,
                    "projector region x1:x2 (default: the potential support)");
    cmd->add_option("--output", output, "write to file instead of stdout");
    cmd->add_option("--plot-data", plot_data,
                    "also write a gnuplot-style whitespace table");
  }

  bc::Units units() const {
    bc::Units u;
    u.hbar = hbar;
    u.mass = mass;
    u.validate();
    return u;
  }

  bc::PotentialProfile profile() {
    const bool has_b = !barrier.empty();
    const bool has_f = !profile_file.empty();
    if (has_b == has_f)
      throw CLI::ValidationError("exactly one of --barrier or --profile is required");
    if (has_b) {
      std::istringstream is(barrier);
      char c = 0;
      if (!(is >> V0 >> c >> d) || c != ',')
        throw CLI::ValidationError("--barrier expects V0,d");
      have_barrier = true;
      return bc::PotentialProfile::rectangular(V0, d);
    }
    std::ifstream in(profile_file);
    if (!in) throw CLI::ValidationError("cannot open profile file " + profile_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return bc::PotentialProfile::from_json(buf.str());
  }

  double resolve_energy() const {
    if (energy_frac > 0.0) {
      if (!have_barrier)
        throw CLI::ValidationError("--energy-frac requires --barrier");
      if (energy > 0.0)
        throw CLI::ValidationError("give either --energy or --energy-frac");
      return energy_frac * V0;
    }
    if (!(energy > 0.0)) throw CLI::ValidationError("--energy E > 0 is required");
    return energy;
  }

  bc::Region region_or_support(const bc::PotentialProfile& p) const {
    if (!region_text.empty()) return parse_region(region_text);
    return bc::Region(p.support_left(), p.support_right());
  }
};

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);  // LF line endings everywhere
      if (!file_) throw CLI::ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_table(const ProblemOptions& opt, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  OutputFile out(opt.output);
  std::ostream& os = out.stream();
  if (opt.table_format == "json") {
    // same fields as the CSV; empty cells become nulls
    os << "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << (r ? ",\n " : "\n ") << "{";
      for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << "\"" << header[i] << "\":";
        const std::string& cell = i < rows[r].size() ? rows[r][i] : std::string{};
        if (header[i] == "reason")
          os << "\"" << cell << "\"";
        else
          os << (cell.empty() ? "null" : cell);
      }
      os << "}";
    }
    os << "\n]\n";
    return;
  }
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
  if (!opt.plot_data.empty()) {
    std::ofstream pd(opt.plot_data, std::ios::binary);
    if (!pd) throw CLI::ValidationError("cannot open plot-data file " + opt.plot_data);
    pd << "#";
    for (const auto& h : header) pd << " " << h;
    pd << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        pd << (i ? " " : "") << (row[i].empty() ? "nan" : row[i]);
      pd << "\n";
    }
  }
}

std::string json_complex(const cplx& v) {
  return "{\"re\":" + fmt17(v.real()) + ",\"im\":" + fmt17(v.imag()) + "}";
}

// ---------------------------------------------------------------------------
// times: every quantity for a single parameter point
// ---------------------------------------------------------------------------

int run_times(ProblemOptions& opt, const std::string& format) {
  const auto profile = opt.profile();
  const double E = opt.resolve_energy();
  const auto units = opt.units();
  const auto sol = bc::solve_stationary(profile, E, units);
  const auto region = opt.region_or_support(profile);
  const auto ct = bc::channel_times(sol, region);
  const double tau_g = bc::group_delay(profile, E, units);
  const double flux_defect = std::fabs(std::norm(sol.t()) + std::norm(sol.r()) - 1.0);

  std::optional<bc::OpaqueAsymptotics> limits;
  std::string limits_reason = "profile is not an opaque rectangular barrier at E < V0";
  if (opt.have_barrier && E < opt.V0 && opt.V0 > 0.0) {
    limits = bc::opaque_asymptotics(opt.V0, opt.d, E, units);
    limits_reason.clear();
  }
  std::optional<double> phase;
  if (std::abs(sol.r()) >= bc::kAmplitudeZeroTol)
    phase = bc::phase_relation_check(sol).phase_difference;

  OutputFile out(opt.output);
  std::ostream& os = out.stream();
  if (format == "text") {
    os << "E = " << fmt17(E) << ", k = " << fmt17(sol.wavenumber()) << "\n"
       << "t = " << fmt17(sol.t().real()) << " + " << fmt17(sol.t().imag()) << "i"
       << "  |t|^2 = " << fmt17(ct.w_T) << "\n"
       << "r = " << fmt17(sol.r().real()) << " + " << fmt17(sol.r().imag()) << "i"
       << "  |r|^2 = " << fmt17(ct.w_R) << "\n"
       << "flux defect ||r|^2+|t|^2-1| = " << fmt17(flux_defect) << "\n"
       << "region = [" << fmt17(region.x1) << ", " << fmt17(region.x2) << "]\n";
    if (ct.tau_T)
      os << "tau_T = " << fmt17(ct.tau_T->re()) << " + " << fmt17(ct.tau_T->im())
         << "i\n";
    else
      os << "tau_T = undefined (zero transmission)\n";
    if (ct.tau_R)
      os << "tau_R = " << fmt17(ct.tau_R->re()) << " + " << fmt17(ct.tau_R->im())
         << "i\n";
    else
      os << "tau_R = undefined (zero reflection)\n";
    os << "tau_d = " << fmt17(ct.tau_d) << "\n"
       << "tau_g = " << fmt17(tau_g) << "\n"
       << "weighted-identity residual = " << fmt17(std::abs(ct.identity_residual))
       << "\n";
    if (limits)
      os << "opaque limits: re " << fmt17(limits->re_limit) << ", |im| "
         << fmt17(limits->im_limit) << "\n";
    return 0;
  }

  os << "{";
  os << "\"energy\":" << fmt17(E) << ",\"wavenumber\":" << fmt17(sol.wavenumber())
     << ",\"hbar\":" << fmt17(units.hbar) << ",\"mass\":" << fmt17(units.mass)
     << ",\"region\":{\"x1\":" << fmt17(region.x1) << ",\"x2\":" << fmt17(region.x2)
     << "}"
     << ",\"t\":" << json_complex(sol.t()) << ",\"r\":" << json_complex(sol.r())
     << ",\"w_T\":" << fmt17(ct.w_T) << ",\"w_R\":" << fmt17(ct.w_R)
     << ",\"flux_defect\":" << fmt17(flux_defect)
     << ",\"flux_ok\":" << (flux_defect < 1e-12 ? "true" : "false");
  if (ct.tau_T)
    os << ",\"tau_T\":" << json_complex(ct.tau_T->value) << ",\"tau_T_reason\":null";
  else
    os << ",\"tau_T\":null,\"tau_T_reason\":\"zero_transmission_amplitude\"";
  if (ct.tau_R)
    os << ",\"tau_R\":" << json_complex(ct.tau_R->value) << ",\"tau_R_reason\":null";
  else
    os << ",\"tau_R\":null,\"tau_R_reason\":\"zero_reflection_amplitude\"";
  os << ",\"tau_d\":" << fmt17(ct.tau_d) << ",\"tau_g\":" << fmt17(tau_g)
     << ",\"identity_residual_abs\":" << fmt17(std::abs(ct.identity_residual));
  if (limits)
    os << ",\"opaque_limits\":{\"re_limit\":" << fmt17(limits->re_limit)
       << ",\"im_limit\":" << fmt17(limits->im_limit) << "},\"opaque_limits_reason\":null";
  else
    os << ",\"opaque_limits\":null,\"opaque_limits_reason\":\"" << limits_reason
       << "\"";
  if (phase)
    os << ",\"phase_difference\":" << fmt17(*phase);
  else
    os << ",\"phase_difference\":null";
  os << "}\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep: one CSV row of times per grid point
// ---------------------------------------------------------------------------

int run_sweep(ProblemOptions& opt, const std::string& param, const std::string& range,
              bool log_spacing) {
  const auto values = sweep_values(parse_sweep(range), log_spacing);
  const auto units = opt.units();
  const auto base_profile = opt.profile();
  const double base_E = (param == "energy") ? 0.0 : opt.resolve_energy();
  if ((param == "d" || param == "V0") && !opt.have_barrier)
    throw CLI::ValidationError("--param " + param + " requires --barrier");

  std::vector<std::vector<std::string>> rows(values.size());
  bc::parallel_for(values.size(), [&](std::size_t i) {
    const double v = values[i];
    bc::PotentialProfile profile = base_profile;
    double E = base_E;
    if (param == "energy")
      E = v;
    else if (param == "d")
      profile = bc::PotentialProfile::rectangular(opt.V0, v);
    else
      profile = bc::PotentialProfile::rectangular(v, opt.d);

    std::vector<std::string> row{fmt17(v)};
    std::string reason;
    try {
      const auto sol = bc::solve_stationary(profile, E, units);
      const auto region = opt.region_text.empty()
                              ? bc::Region(profile.support_left(), profile.support_right())
                              : parse_region(opt.region_text);
      const auto ct = bc::channel_times(sol, region);
      const double tg = bc::group_delay(profile, E, units);
      row.push_back(fmt17(sol.t().real()));
      row.push_back(fmt17(sol.t().imag()));
      row.push_back(fmt17(sol.r().real()));
      row.push_back(fmt17(sol.r().imag()));
      row.push_back(fmt17(ct.w_T));
      row.push_back(fmt17(ct.w_R));
      if (ct.tau_T) {
        row.push_back(fmt17(ct.tau_T->re()));
        row.push_back(fmt17(ct.tau_T->im()));
      } else {
        row.insert(row.end(), {"", ""});
        reason = "tau_T_undefined_zero_transmission";
      }
      if (ct.tau_R) {
        row.push_back(fmt17(ct.tau_R->re()));
        row.push_back(fmt17(ct.tau_R->im()));
      } else {
        row.insert(row.end(), {"", ""});
        reason = "tau_R_undefined_zero_reflection";
      }
      row.push_back(fmt17(ct.tau_d));
      row.push_back(fmt17(tg));
    } catch (const std::exception& e) {
      row.resize(13);
      reason = e.what();
    }
    row.push_back(reason);
    rows[i] = std::move(row);
  });

  write_table(opt,
              {param, "t_re", "t_im", "r_re", "r_im", "w_T", "w_R", "tau_T_re",
               "tau_T_im", "tau_R_re", "tau_R_im", "tau_d", "tau_g", "reason"},
              rows);
  return 0;
}

// ---------------------------------------------------------------------------
// density: pointwise conditional dwell densities on an x grid
// ---------------------------------------------------------------------------

int run_density(ProblemOptions& opt, const std::string& channel_name,
                const std::string& xrange) {
  const auto profile = opt.profile();
  const double E = opt.resolve_energy();
  const auto units = opt.units();
  const auto channel = parse_channel(channel_name);
  const auto sol = bc::solve_stationary(profile, E, units);
  const auto xs = sweep_values(parse_sweep(xrange), false);

  std::vector<std::vector<std::string>> rows(xs.size());
  bc::parallel_for(xs.size(), [&](std::size_t i) {
    std::vector<std::string> row{fmt17(xs[i])};
    std::string reason;
    try {
      const auto s = bc::dwell_density(sol, channel, xs[i]);
      cplx v;
      if (channel == bc::TimeChannel::transmitted)
        v = *s.density_T;
      else if (channel == bc::TimeChannel::reflected)
        v = *s.density_R;
      else
        v = {s.density_d, 0.0};
      row.push_back(fmt17(v.real()));
      row.push_back(fmt17(v.imag()));
    } catch (const std::exception& e) {
      row.insert(row.end(), {"", ""});
      reason = e.what();
    }
    row.push_back(reason);
    rows[i] = std::move(row);
  });
  write_table(opt, {"x", "density_re", "density_im", "reason"}, rows);
  return 0;
}

// ---------------------------------------------------------------------------
// clock / pointer: shared CSV schema
// ---------------------------------------------------------------------------

std::vector<std::string> clock_row(double sweep_value,
                                   const std::optional<bc::SpinClockResult>& spin,
                                   const std::optional<bc::PointerOutcome>& ptr,
                                   const std::string& reason) {
  std::vector<std::string> row{fmt17(sweep_value)};
  if (spin) {
    row.push_back(fmt17(spin->tau_y));
    row.push_back(fmt17(spin->tau_z));
    row.insert(row.end(), {"", ""});
    row.push_back(fmt17(spin->norm));
  } else if (ptr) {
    row.insert(row.end(), {"", ""});
    row.push_back(fmt17(ptr->dQ));
    row.push_back(fmt17(ptr->dP));
    row.push_back(fmt17(ptr->norm));
  } else {
    row.insert(row.end(), {"", "", "", "", ""});
  }
  row.push_back(reason);
  return row;
}

const std::vector<std::string> kClockHeaderTail{"tau_y", "tau_z", "dQ",
                                                "dP",    "norm",  "reason"};

int run_clock(ProblemOptions& opt, const std::string& channel_name, double spin,
              double omega, const std::string& omega_sweep,
              const std::string& squeeze_sweep, bool log_spacing) {
  const auto profile = opt.profile();
  const double E = opt.resolve_energy();
  const auto units = opt.units();
  const auto channel = parse_channel(channel_name);
  const auto region = opt.region_or_support(profile);

  const bool sweep_omega = !omega_sweep.empty();
  const bool sweep_squeeze = !squeeze_sweep.empty();
  if (sweep_omega && sweep_squeeze)
    throw CLI::ValidationError("give only one of --omega-sweep / --squeeze-sweep");
  if (sweep_squeeze && !(omega > 0.0))
    throw CLI::ValidationError("--squeeze-sweep needs a fixed --omega");
  if (!sweep_omega && !sweep_squeeze && !(omega >= 0.0))
    throw CLI::ValidationError("--omega (or a sweep) is required");

  std::vector<double> values;
  std::string col0;
  if (sweep_omega) {
    values = sweep_values(parse_sweep(omega_sweep), log_spacing);
    col0 = "omega_L";
  } else if (sweep_squeeze) {
    values = sweep_values(parse_sweep(squeeze_sweep), log_spacing);
    col0 = "width";
  } else {
    values = {omega};
    col0 = "omega_L";
  }

  std::vector<std::vector<std::string>> rows(values.size());
  bc::parallel_for(values.size(), [&](std::size_t i) {
    std::string reason;
    std::optional<bc::SpinClockResult> res;
    try {
      if (sweep_squeeze) {
        const auto state = bc::squeezed_spin_state(spin, values[i]);
        res = bc::larmor_spin_S(profile, region, E, omega, state, channel, units);
      } else if (spin == 0.5) {
        res = bc::larmor_spin_half(profile, region, E, values[i], channel, units);
      } else {
        const auto state = bc::coherent_spin_state(spin);
        res = bc::larmor_spin_S(profile, region, E, values[i], state, channel, units);
      }
    } catch (const std::exception& e) {
      reason = e.what();
    }
    rows[i] = clock_row(values[i], res, std::nullopt, reason);
  });

  std::vector<std::string> header{col0};
  header.insert(header.end(), kClockHeaderTail.begin(), kClockHeaderTail.end());
  write_table(opt, header, rows);
  return 0;
}

int run_pointer(ProblemOptions& opt, const std::string& channel_name, double g0,
                double sigma, const std::string& g0_sweep,
                const std::string& sigma_sweep, bool log_spacing) {
  const auto profile = opt.profile();
  const double E = opt.resolve_energy();
  const auto units = opt.units();
  const auto channel = parse_channel(channel_name);
  const auto region = opt.region_or_support(profile);

  const bool sg = !g0_sweep.empty(), ss = !sigma_sweep.empty();
  if (sg && ss)
    throw CLI::ValidationError("give only one of --g0-sweep / --sigma-sweep");
  std::vector<double> values;
  std::string col0;
  if (sg) {
    if (!(sigma > 0.0)) throw CLI::ValidationError("--g0-sweep needs --sigma");
    values = sweep_values(parse_sweep(g0_sweep), log_spacing);
    col0 = "g0";
  } else if (ss) {
    if (!(g0 >= 0.0)) throw CLI::ValidationError("--sigma-sweep needs --g0");
    values = sweep_values(parse_sweep(sigma_sweep), log_spacing);
    col0 = "sigma";
  } else {
    if (!(g0 >= 0.0) || !(sigma > 0.0))
      throw CLI::ValidationError("--g0 and --sigma are required");
    values = {g0};
    col0 = "g0";
  }

  std::vector<std::vector<std::string>> rows(values.size());
  bc::parallel_for(values.size(), [&](std::size_t i) {
    std::string reason;
    std::optional<bc::PointerOutcome> res;
    try {
      const double g = sg ? values[i] : g0;
      const double s = ss ? values[i] : sigma;
      res = bc::pointer_measurement(profile, region, E, g, s, channel, units);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    rows[i] = clock_row(values[i], std::nullopt, res, reason);
  });

  std::vector<std::string> header{col0};
  header.insert(header.end(), kClockHeaderTail.begin(), kClockHeaderTail.end());
  write_table(opt, header, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "barrierclock: weak-measurement traversal times for 1D piecewise-constant "
      "barriers"};
  app.require_subcommand(1);

  // --- times ---
  ProblemOptions times_opt;
  std::string times_format = "json";
  auto* times = app.add_subcommand(
      "times", "t, r, tau_T, tau_R, tau_d, tau_g and references at one point");
  times_opt.add_to(times);
  times->add_option("--format", times_format, "json (default) or text")
      ->check(CLI::IsMember({"json", "text"}));
  times->footer(
      "JSON fields: energy, wavenumber, hbar, mass, region{x1,x2}, t{re,im},\n"
      "r{re,im}, w_T, w_R, flux_defect, flux_ok, tau_T{re,im}|null,\n"
      "tau_T_reason, tau_R{re,im}|null, tau_R_reason, tau_d, tau_g,\n"
      "identity_residual_abs, opaque_limits{re_limit,im_limit}|null,\n"
      "opaque_limits_reason, phase_difference|null.  All floats carry 17\n"
      "significant digits.");

  // --- sweep ---
  ProblemOptions sweep_opt;
  std::string sweep_param = "energy", sweep_range;
  bool sweep_log = false;
  auto* sweep =
      app.add_subcommand("sweep", "CSV of all times over an energy/d/V0 grid");
  sweep_opt.add_to(sweep);
  sweep_opt.add_table_format(sweep);
  sweep->add_option("--param", sweep_param, "energy (default), d or V0")
      ->check(CLI::IsMember({"energy", "d", "V0"}));
  sweep->add_option("--range", sweep_range, "start:stop:count")->required();
  sweep->add_flag("--log", sweep_log, "log-spaced grid");
  sweep->footer(
      "CSV columns: <param>, t_re, t_im, r_re, r_im, w_T, w_R, tau_T_re,\n"
      "tau_T_im, tau_R_re, tau_R_im, tau_d, tau_g, reason.  Undefined times\n"
      "leave empty cells and set the reason column.  --format json mirrors\n"
      "the same fields, with nulls for empty cells.");

  // --- density ---
  ProblemOptions dens_opt;
  std::string dens_channel = "dwell", dens_xrange;
  auto* density = app.add_subcommand(
      "density", "CSV of the conditional dwell density over an x grid");
  dens_opt.add_to(density);
  dens_opt.add_table_format(density);
  density->add_option("--channel", dens_channel, "T, R or dwell")
      ->check(CLI::IsMember({"T", "R", "dwell"}));
  density->add_option("--xrange", dens_xrange, "x1:x2:count")->required();
  density->footer("CSV columns: x, density_re, density_im, reason.");

  // --- clock ---
  ProblemOptions clock_opt;
  std::string clock_channel = "T", omega_sweep, squeeze_sweep;
  double clock_spin = 0.5, clock_omega = -1.0;
  bool clock_log = false;
  auto* clock = app.add_subcommand(
      "clock", "Larmor clock CSV: spin-1/2 or spin-S, omega or squeeze sweeps");
  clock_opt.add_to(clock);
  clock_opt.add_table_format(clock);
  clock->add_option("--channel", clock_channel, "post-selected channel: T or R")
      ->check(CLI::IsMember({"T", "R"}));
  clock->add_option("--spin", clock_spin, "spin quantum number (default 1/2)");
  clock->add_option("--omega", clock_omega, "Larmor frequency");
  clock->add_option("--omega-sweep", omega_sweep, "start:stop:count sweep of omega_L");
  clock->add_option("--squeeze-sweep", squeeze_sweep,
                    "start:stop:count sweep of the initial Delta S_z");
  clock->add_flag("--log", clock_log, "log-spaced sweep");
  clock->footer(
      "CSV columns: omega_L (or width), tau_y, tau_z, dQ, dP, norm, reason.\n"
      "Spin rows leave dQ/dP empty; tau_y = in-plane angle / omega_L,\n"
      "tau_z = out-of-plane alignment / omega_L.");

  // --- pointer ---
  ProblemOptions ptr_opt;
  std::string ptr_channel = "T", g0_sweep, sigma_sweep;
  double ptr_g0 = -1.0, ptr_sigma = -1.0;
  bool ptr_log = false;
  auto* pointer = app.add_subcommand(
      "pointer", "Gaussian von Neumann pointer CSV: dQ, dP over g0/sigma sweeps");
  ptr_opt.add_to(pointer);
  ptr_opt.add_table_format(pointer);
  pointer->add_option("--channel", ptr_channel, "post-selected channel: T or R")
      ->check(CLI::IsMember({"T", "R"}));
  pointer->add_option("--g0", ptr_g0, "integrated coupling strength");
  pointer->add_option("--sigma", ptr_sigma, "initial pointer position spread");
  pointer->add_option("--g0-sweep", g0_sweep, "start:stop:count sweep of g0");
  pointer->add_option("--sigma-sweep", sigma_sweep, "start:stop:count sweep of sigma");
  pointer->add_flag("--log", ptr_log, "log-spaced sweep");
  pointer->footer(
      "CSV columns: g0 (or sigma), tau_y, tau_z, dQ, dP, norm, reason.\n"
      "Pointer rows leave tau_y/tau_z empty; dQ is the mean position shift,\n"
      "dP the mean momentum shift of the post-selected pointer.");

  // --- verify ---
  std::uint64_t seed = 1;
  int cases = 200;
  double tolerance_scale = 1.0;
  std::string verify_output;
  auto* verify = app.add_subcommand(
      "verify",
      "run the seeded randomized invariant suite; exit 0 iff every check passes");
  verify->add_option("--seed", seed, "RNG seed (default 1)");
  verify->add_option("--cases", cases, "number of random cases (default 200)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tolerance-scale", tolerance_scale,
                     "multiply every tolerance (0 is the harness self-test)");
  verify->add_option("--output", verify_output, "JSON-lines report file");
  verify->footer(
      "Report lines: {quantity, primary, oracle, abs_error, rel_error,\n"
      "tolerance, pass}.  Exit codes: 0 all checks pass, 1 any failure.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (times->parsed()) return run_times(times_opt, times_format);
    if (sweep->parsed()) return run_sweep(sweep_opt, sweep_param, sweep_range, sweep_log);
    if (density->parsed()) return run_density(dens_opt, dens_channel, dens_xrange);
    if (clock->parsed())
      return run_clock(clock_opt, clock_channel, clock_spin, clock_omega, omega_sweep,
                       squeeze_sweep, clock_log);
    if (pointer->parsed())
      return run_pointer(ptr_opt, ptr_channel, ptr_g0, ptr_sigma, g0_sweep, sigma_sweep,
                         ptr_log);
    if (verify->parsed()) {
      bc::VerifyOptions opt;
      opt.seed = seed;
      opt.cases = cases;
      opt.tolerance_scale = tolerance_scale;
      OutputFile out(verify_output);
      const auto summary = bc::run_verify(opt, &out.stream());
      std::cerr << "verify: " << summary.total << " checks, " << summary.failed
                << " failed (seed=" << seed << ", cases=" << cases << ")\n";
      return summary.failed == 0 ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
