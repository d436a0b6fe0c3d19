#include "labelflow/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "labelflow/error.hpp"

namespace labelflow::config {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::kConfigError, msg); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  if (v == "2pi") return 2.0 * 3.14159265358979323846;
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || std::isnan(d))
    fail(key + ": expected a number, got '" + v + "'");
  return d;
}

long long parse_int(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    fail(key + ": expected an integer, got '" + v + "'");
  return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> parse_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(Config&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> s = {
      {"grid.n", [](Config& c, auto& k, auto& v) { c.n = static_cast<int>(parse_int(k, v)); }},
      {"grid.L", [](Config& c, auto& k, auto& v) { c.length = parse_double(k, v); }},
      {"grid.interp_stencil",
       [](Config& c, auto& k, auto& v) { c.run.interpolation.stencil = static_cast<int>(parse_int(k, v)); }},
      {"grid.interp_upsample",
       [](Config& c, auto& k, auto& v) { c.run.interpolation.upsample = static_cast<int>(parse_int(k, v)); }},
      {"time.t_end", [](Config& c, auto& k, auto& v) { c.run.t_end = parse_double(k, v); }},
      {"time.dt_max", [](Config& c, auto& k, auto& v) { c.run.dt_max = parse_double(k, v); }},
      {"time.cfl", [](Config& c, auto& k, auto& v) { c.run.cfl = parse_double(k, v); }},
      {"holder.mu", [](Config& c, auto& k, auto& v) { c.run.mu = parse_double(k, v); }},
      {"holder.trigger",
       [](Config& c, auto& k, auto& v) {
         if (v == "holder") c.run.trigger = evolve::ResetTrigger::kHolder;
         else if (v == "sup_gradient") c.run.trigger = evolve::ResetTrigger::kSupGradient;
         else fail(k + ": expected holder or sup_gradient, got '" + v + "'");
       }},
      {"chart.epsilon_reset", [](Config& c, auto& k, auto& v) { c.run.epsilon_reset = parse_double(k, v); }},
      {"ic.scenario", [](Config& c, auto&, auto& v) { c.ic.name = v; }},
      {"ic.A", [](Config& c, auto& k, auto& v) { c.ic.a = parse_double(k, v); }},
      {"ic.B", [](Config& c, auto& k, auto& v) { c.ic.b = parse_double(k, v); }},
      {"ic.C", [](Config& c, auto& k, auto& v) { c.ic.c = parse_double(k, v); }},
      {"ic.wavenumber", [](Config& c, auto& k, auto& v) { c.ic.wavenumber = static_cast<int>(parse_int(k, v)); }},
      {"ic.amplitude", [](Config& c, auto& k, auto& v) { c.ic.amplitude = parse_double(k, v); }},
      {"ic.seed",
       [](Config& c, auto& k, auto& v) {
         const long long s = parse_int(k, v);
         if (s < 0) fail(k + ": must be >= 0");
         c.ic.seed = static_cast<std::uint64_t>(s);
       }},
      {"ic.spectrum_exponent",
       [](Config& c, auto& k, auto& v) { c.ic.spectrum_exponent = parse_double(k, v); }},
      {"ic.k_cut", [](Config& c, auto& k, auto& v) { c.ic.k_cut = static_cast<int>(parse_int(k, v)); }},
      {"ic.two_dimensional",
       [](Config& c, auto& k, auto& v) { c.ic.two_dimensional = parse_bool(k, v); }},
      {"ic.normalization",
       [](Config& c, auto& k, auto& v) {
         if (v == "rms") c.ic.normalization = scenario::Normalization::kRms;
         else if (v == "curl_holder") c.ic.normalization = scenario::Normalization::kCurlHolder;
         else fail(k + ": expected rms or curl_holder, got '" + v + "'");
       }},
      {"ic.thickness", [](Config& c, auto& k, auto& v) { c.ic.thickness = parse_double(k, v); }},
      {"ic.perturbation", [](Config& c, auto& k, auto& v) { c.ic.perturbation = parse_double(k, v); }},
      {"output.diagnostics_csv", [](Config& c, auto&, auto& v) { c.output.diagnostics_csv = v; }},
      {"output.snapshot_dir", [](Config& c, auto&, auto& v) { c.output.snapshot_dir = v; }},
      {"output.diagnostics_cadence",
       [](Config& c, auto& k, auto& v) { c.output.diagnostics_cadence = static_cast<int>(parse_int(k, v)); }},
      {"output.snapshot_cadence",
       [](Config& c, auto& k, auto& v) { c.output.snapshot_cadence = static_cast<int>(parse_int(k, v)); }},
      {"output.fields", [](Config& c, auto&, auto& v) { c.output.fields = parse_list(v); }},
      {"output.loop_markers",
       [](Config& c, auto& k, auto& v) { c.loop_markers = static_cast<int>(parse_int(k, v)); }},
      {"mode.mode",
       [](Config& c, auto& k, auto& v) {
         if (v == "direct") c.mode = Mode::kDirect;
         else if (v == "picard") c.mode = Mode::kPicard;
         else if (v == "oracle_compare") c.mode = Mode::kOracleCompare;
         else fail(k + ": expected direct, picard or oracle_compare, got '" + v + "'");
       }},
      {"mode.picard_steps",
       [](Config& c, auto& k, auto& v) { c.picard_steps = static_cast<int>(parse_int(k, v)); }},
      {"mode.picard_tol", [](Config& c, auto& k, auto& v) { c.run.picard_tol = parse_double(k, v); }},
      {"mode.picard_max_iter",
       [](Config& c, auto& k, auto& v) { c.run.picard_max_iter = static_cast<int>(parse_int(k, v)); }},
      {"mode.picard_c", [](Config& c, auto& k, auto& v) { c.run.picard_c = parse_double(k, v); }},
  };
  return s;
}

void apply(Config& c, const std::string& key, const std::string& value) {
  const auto& s = schema();
  const auto it = s.find(key);
  if (it == s.end()) fail("unknown configuration key '" + key + "'");
  it->second(c, key, value);
}

void validate(const Config& c) {
  if (c.n < 8 || c.n % 2 != 0) fail("grid.n must be even and >= 8");
  if (!(c.length > 0.0) || !std::isfinite(c.length)) fail("grid.L must be positive");
  if (c.output.diagnostics_cadence < 1) fail("output.diagnostics_cadence must be >= 1");
  if (c.output.snapshot_cadence < 1) fail("output.snapshot_cadence must be >= 1");
  for (const auto& f : c.output.fields)
    if (f != "u" && f != "delta" && f != "phi" && f != "omega" && f != "n_A")
      fail("output.fields: unknown field '" + f + "'");
  if (c.loop_markers < 16) fail("output.loop_markers must be >= 16");
  if (c.picard_steps < 1) fail("mode.picard_steps must be >= 1");
  try {
    c.run.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kDirect: return "direct";
    case Mode::kPicard: return "picard";
    case Mode::kOracleCompare: return "oracle_compare";
  }
  return "direct";
}

Config parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  Config c;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"grid", "time", "holder", "chart", "ic", "output", "mode"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) fail("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty()) fail("line " + std::to_string(line_no) + ": key outside a section");
    apply(c, section + "." + trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) fail("override '" + o + "' is not key=value");
    apply(c, trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
  validate(c);
  return c;
}

Config load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail("cannot read configuration file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string format_config(const Config& c) {
  std::ostringstream os;
  os.precision(17);
  os << "[grid]\nn = " << c.n << "\nL = " << c.length
     << "\ninterp_stencil = " << c.run.interpolation.stencil
     << "\ninterp_upsample = " << c.run.interpolation.upsample << "\n\n";
  os << "[time]\nt_end = " << c.run.t_end << "\ndt_max = " << c.run.dt_max
     << "\ncfl = " << c.run.cfl << "\n\n";
  os << "[holder]\nmu = " << c.run.mu << "\ntrigger = "
     << (c.run.trigger == evolve::ResetTrigger::kHolder ? "holder" : "sup_gradient") << "\n\n";
  os << "[chart]\nepsilon_reset = ";
  if (std::isinf(c.run.epsilon_reset)) os << "inf";
  else os << c.run.epsilon_reset;
  os << "\n\n[ic]\nscenario = " << c.ic.name << "\nA = " << c.ic.a << "\nB = " << c.ic.b
     << "\nC = " << c.ic.c << "\nwavenumber = " << c.ic.wavenumber << "\namplitude = " << c.ic.amplitude << "\nseed = " << c.ic.seed
     << "\nspectrum_exponent = " << c.ic.spectrum_exponent << "\nk_cut = " << c.ic.k_cut
     << "\ntwo_dimensional = " << (c.ic.two_dimensional ? "true" : "false")
     << "\nnormalization = "
     << (c.ic.normalization == scenario::Normalization::kRms ? "rms" : "curl_holder")
     << "\nthickness = " << c.ic.thickness << "\nperturbation = " << c.ic.perturbation << "\n\n";
  os << "[output]\ndiagnostics_csv = " << c.output.diagnostics_csv.string()
     << "\nsnapshot_dir = " << c.output.snapshot_dir.string()
     << "\ndiagnostics_cadence = " << c.output.diagnostics_cadence
     << "\nsnapshot_cadence = " << c.output.snapshot_cadence << "\nfields = ";
  for (std::size_t i = 0; i < c.output.fields.size(); ++i)
    os << (i ? "," : "") << c.output.fields[i];
  os << "\nloop_markers = " << c.loop_markers << "\n\n";
  os << "[mode]\nmode = " << to_string(c.mode) << "\npicard_steps = " << c.picard_steps
     << "\npicard_tol = " << c.run.picard_tol << "\npicard_max_iter = " << c.run.picard_max_iter
     << "\npicard_c = " << c.run.picard_c << "\n";
  return os.str();
}

}  // namespace labelflow::config
