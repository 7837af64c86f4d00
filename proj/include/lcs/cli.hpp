#pragma once

// Run configuration and document emission behind the `lcs` command-line tool.
// Every subcommand produces a table plus a metadata block; CSV puts the
// metadata in leading `#` lines, JSON under "meta".

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lcs/bessel.hpp"
#include "lcs/dynamics.hpp"
#include "lcs/error.hpp"
#include "lcs/phase_space.hpp"
#include "lcs/states.hpp"
#include "lcs/statistics.hpp"

namespace lcs::cli {

inline constexpr std::string_view version = "1.0.0";

enum exit_code : int { ok = 0, usage = 2, numeric_domain = 3, convergence = 4 };

/// Malformed command line (as opposed to a well-formed but out-of-domain value).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { State, Stats, Husimi, Inversion, IdentityCheck };
enum class Format { Csv, Json };

inline std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::State: return "state";
    case Command::Stats: return "stats";
    case Command::Husimi: return "husimi";
    case Command::Inversion: return "inversion";
    case Command::IdentityCheck: return "identity-check";
  }
  return "?";
}

/// lo:hi:step with both endpoints included.
struct Sweep {
  double lo = 0.0, hi = 0.0, step = 1.0;

  std::vector<double> points() const {
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> xs(count);
    for (std::size_t k = 0; k < count; ++k) xs[k] = lo + static_cast<double>(k) * step;
    return xs;
  }
};

inline Sweep parse_sweep(std::string_view text) {
  Sweep s;
  double* fields[] = {&s.lo, &s.hi, &s.step};
  std::size_t pos = 0;
  for (int f = 0; f < 3; ++f) {
    const std::size_t colon = text.find(':', pos);
    if ((f < 2) == (colon == std::string_view::npos))
      throw usage_error("--sweep: expected lo:hi:step, got '" + std::string(text) + "'");
    const std::string part(text.substr(pos, f < 2 ? colon - pos : std::string_view::npos));
    std::size_t used = 0;
    try {
      *fields[f] = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size())
      throw usage_error("--sweep: cannot parse '" + part + "' in '" + std::string(text) + "'");
    pos = colon + 1;
  }
  return s;
}

struct RunConfig {
  Command command = Command::State;
  double x = 0.0;
  double theta = 0.0;
  Family family = Family::ModifiedLondon;
  std::size_t dim = 0;
  std::optional<Sweep> sweep;  // stats only; otherwise the single x
  std::optional<double> half_width;  // husimi; default from the state's mean
  std::size_t grid_samples = default_grid_samples;
  double lambda = 1.0;
  double t_max = 100.0;
  std::size_t steps = 4001;
  std::size_t window = default_envelope_window;
  std::vector<double> y{2.0};  // identity-check arguments
  Format format = Format::Csv;
  int precision = 17;
};

/// Domain checks for every numeric parameter, before any computation.
inline void validate(const RunConfig& c) {
  auto require = [](bool cond, const std::string& what) {
    if (!cond) throw domain_error(what);
  };
  require(c.precision >= 1 && c.precision <= 17, "--precision must be in [1, 17]");
  require(std::isfinite(c.theta), "--theta must be finite");
  require(c.dim == 0 || c.dim >= min_state_dim, "--dim must be 0 (auto) or >= 32");
  if (c.command != Command::IdentityCheck && !c.sweep)
    require(std::isfinite(c.x) && c.x >= 0.0, "--x must be finite and >= 0, got " + detail::fmt_num(c.x));
  switch (c.command) {
    case Command::Stats:
      if (c.sweep) {
        const Sweep& s = *c.sweep;
        require(std::isfinite(s.lo) && std::isfinite(s.hi) && std::isfinite(s.step), "--sweep values must be finite");
        require(s.lo >= 0.0, "--sweep lo must be >= 0");
        require(s.step > 0.0, "--sweep step must be > 0");
        require(s.hi >= s.lo, "--sweep hi must be >= lo");
        require((s.hi - s.lo) / s.step < 1e7, "--sweep has too many points");
      }
      break;
    case Command::Husimi:
      require(c.grid_samples >= 2, "--n must be >= 2");
      if (c.half_width) require(std::isfinite(*c.half_width) && *c.half_width > 0.0, "--half-width must be > 0");
      break;
    case Command::Inversion:
      require(std::isfinite(c.lambda) && c.lambda > 0.0, "--lambda must be > 0");
      require(std::isfinite(c.t_max) && c.t_max > 0.0, "--t-max must be > 0");
      require(c.steps >= 2, "--steps must be >= 2");
      require(c.window >= 3 && c.window % 2 == 1, "--window must be odd and >= 3");
      require(c.window <= c.steps, "--window must not exceed --steps");
      break;
    case Command::IdentityCheck:
      require(!c.y.empty(), "--y needs at least one value");
      for (double y : c.y) require(std::isfinite(y) && y > 0.0, "--y must be finite and > 0, got " + detail::fmt_num(y));
      break;
    case Command::State:
      break;
  }
}

struct Column {
  std::string name;
  bool integer = false;
};

struct Document {
  nlohmann::ordered_json meta;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer_keys;  // meta entries repeated after the CSV table
};

namespace detail {

inline std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline std::string format_cell(double v, bool integer, int precision) {
  if (integer) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    return buf;
  }
  return format_double(v, precision);
}

inline std::string format_scalar(const nlohmann::ordered_json& j, int precision) {
  if (j.is_null()) return "n/a";
  if (j.is_number_float()) return format_double(j.get<double>(), precision);
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ";" : "") + format_scalar(j[k], precision);
    return s;
  }
  return j.dump();
}

inline std::string format_meta_line(const nlohmann::ordered_json& obj, int precision) {
  std::string line = "#";
  for (const auto& [key, value] : obj.items()) line += " " + key + "=" + format_scalar(value, precision);
  return line;
}

inline nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = std::string(to_string(c.command));
  switch (c.command) {
    case Command::IdentityCheck:
      j["y"] = c.y;
      return j;
    case Command::Stats:
      if (c.sweep) {
        j["sweep"] = format_double(c.sweep->lo, 17) + ":" + format_double(c.sweep->hi, 17) + ":" +
                     format_double(c.sweep->step, 17);
      } else {
        j["x"] = c.x;
      }
      break;
    default:
      j["x"] = c.x;
  }
  j["family"] = std::string(lcs::to_string(c.family));
  j["theta"] = c.theta;
  j["dim_request"] = c.dim == 0 ? nlohmann::ordered_json("auto") : nlohmann::ordered_json(c.dim);
  if (c.command == Command::Husimi) {
    j["half_width"] = c.half_width ? nlohmann::ordered_json(*c.half_width) : nlohmann::ordered_json("auto");
    j["n"] = c.grid_samples;
  }
  if (c.command == Command::Inversion) {
    j["lambda"] = c.lambda;
    j["t_max"] = c.t_max;
    j["steps"] = c.steps;
    j["window"] = c.window;
  }
  return j;
}

struct NormColumns {
  double series = std::nan(""), closed_form = std::nan(""), unit_norm = std::nan("");
};

inline NormColumns norm_columns(double x) {
  if (x <= 0.0) return {};
  const NormalizationConstants k = normalization_constants(x);
  return {k.series, k.closed_form, k.unit_norm};
}

inline nlohmann::ordered_json state_diagnostics(const StateSpec& spec, const StateDiagnostics& d) {
  const NormColumns k = norm_columns(spec.amplitude);
  nlohmann::ordered_json j;
  j["dim"] = d.dim;
  j["tail_mass"] = d.tail_mass;
  j["renormalization"] = d.renormalization;
  j["norm_series"] = finite_or_null(k.series);
  j["norm_closed_form"] = finite_or_null(k.closed_form);
  j["norm_unit"] = finite_or_null(k.unit_norm);
  return j;
}

inline StateSpec spec_of(const RunConfig& c, double x) { return {c.family, x, c.theta, c.dim}; }

inline Document state_document(const RunConfig& c) {
  const StateSpec spec = spec_of(c, c.x);
  const PreparedState s = prepare_state(spec);
  Document doc;
  doc.meta["diagnostics"] = state_diagnostics(spec, s.diagnostics);
  doc.columns = {{"n", true}, {"re", false}, {"im", false}, {"P", false}};
  for (std::size_t n = 0; n < s.state.dim(); ++n) {
    const amplitude a = s.state[n];
    doc.rows.push_back({static_cast<double>(n), a.real(), a.imag(), std::norm(a)});
  }
  return doc;
}

inline Document stats_document(const RunConfig& c) {
  const std::vector<double> xs = c.sweep ? c.sweep->points() : std::vector<double>{c.x};
  Document doc;
  doc.columns = {{"x", false},        {"dim", true},          {"tail_mass", false},         {"mean", false},
                 {"second_moment", false}, {"Q", false},       {"Q_plus_1", false},          {"norm_series", false},
                 {"norm_closed_form", false}, {"norm_unit", false}};
  std::size_t max_dim = 0;
  double max_tail = 0.0;
  for (double x : xs) {
    const StateSpec spec = spec_of(c, x);
    const PreparedState s = prepare_state(spec);
    const StatisticsReport r = statistics(s.state, s.diagnostics.tail_mass);
    if (!r.mandel_q) throw domain_error("stats: Mandel Q is undefined at x=" + lcs::detail::fmt_num(x) + " (vacuum)");
    const NormColumns k = norm_columns(x);
    doc.rows.push_back({x, static_cast<double>(s.diagnostics.dim), s.diagnostics.tail_mass, r.mean, r.second_moment,
                        *r.mandel_q, *r.mandel_q + 1.0, k.series, k.closed_form, k.unit_norm});
    max_dim = std::max(max_dim, s.diagnostics.dim);
    max_tail = std::max(max_tail, s.diagnostics.tail_mass);
  }
  nlohmann::ordered_json d;
  d["points"] = xs.size();
  d["max_dim"] = max_dim;
  d["max_tail_mass"] = max_tail;
  d["normalization"] = "per-row";
  doc.meta["diagnostics"] = d;
  return doc;
}

inline Document husimi_document(const RunConfig& c) {
  const StateSpec spec = spec_of(c, c.x);
  const PreparedState s = prepare_state(spec);
  const GridSpec grid_spec =
      c.half_width ? GridSpec::centered(*c.half_width, c.grid_samples)
                   : GridSpec::centered(default_grid(s.state).x_max, c.grid_samples);
  const PhaseSpaceGrid grid = husimi_grid(s.state, grid_spec);

  Document doc;
  doc.meta["diagnostics"] = state_diagnostics(spec, s.diagnostics);
  nlohmann::ordered_json peak;
  peak["argmax_X"] = grid_spec.x_at(grid.argmax_i);
  peak["argmax_Y"] = grid_spec.y_at(grid.argmax_j);
  peak["Q_max"] = grid.max_value;
  peak["total_mass"] = grid.total_mass();
  doc.meta["peak"] = peak;
  doc.columns = {{"X", false}, {"Y", false}, {"Q", false}};
  for (std::size_t i = 0; i < grid_spec.nx; ++i)
    for (std::size_t j = 0; j < grid_spec.ny; ++j) doc.rows.push_back({grid_spec.x_at(i), grid_spec.y_at(j), grid.at(i, j)});
  return doc;
}

inline Document inversion_document(const RunConfig& c) {
  const StateSpec spec = spec_of(c, c.x);
  const PreparedState s = prepare_state(spec);
  const std::vector<double> p = photon_distribution(s.state);
  const InversionTrace trace = inversion_trace(p, c.lambda, c.t_max, c.steps);
  const RevivalReport rev = detect_revivals(trace, c.window);

  Document doc;
  doc.meta["diagnostics"] = state_diagnostics(spec, s.diagnostics);
  nlohmann::ordered_json r;
  r["collapse_time"] = rev.collapse_time ? nlohmann::ordered_json(*rev.collapse_time) : nlohmann::ordered_json(nullptr);
  r["revival_times"] = rev.revival_times;
  doc.meta["revivals"] = r;
  doc.footer_keys = {"revivals"};
  doc.columns = {{"t", false}, {"W", false}};
  for (std::size_t k = 0; k < trace.times.size(); ++k) doc.rows.push_back({trace.times[k], trace.values[k]});
  return doc;
}

inline Document identity_document(const RunConfig& c) {
  Document doc;
  doc.columns = {{"y", false}, {"series", false}, {"closed_form", false}, {"gap", false}};
  double worst = 0.0;
  for (double y : c.y) {
    const double series = lcs::detail::weighted_bessel_square_sum(y);
    const BesselTable low = bessel_table(y, 1);
    const double closed = 0.5 * y * y * (low[0] * low[0] + low[1] * low[1]) - 0.5 * y * low[0] * low[1];
    const double gap = weighted_sum_identity_gap(y);
    worst = std::max(worst, gap);
    doc.rows.push_back({y, series, closed, gap});
  }
  nlohmann::ordered_json d;
  d["max_gap"] = worst;
  doc.meta["diagnostics"] = d;
  return doc;
}

inline void emit_csv(const Document& doc, int precision, std::ostream& out) {
  out << "# lcs " << version << '\n';
  for (const auto& [key, value] : doc.meta.items()) {
    bool footer = false;
    for (const auto& k : doc.footer_keys) footer = footer || k == key;
    if (!footer) out << format_meta_line(value, precision) << '\n';
  }
  for (std::size_t k = 0; k < doc.columns.size(); ++k) out << (k ? "," : "") << doc.columns[k].name;
  out << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << format_cell(row[k], doc.columns[k].integer, precision);
    out << '\n';
  }
  for (const auto& key : doc.footer_keys) out << format_meta_line(doc.meta[key], precision) << '\n';
}

inline void emit_json(const Document& doc, std::ostream& out) {
  nlohmann::ordered_json j;
  j["meta"] = doc.meta;
  j["meta"]["version"] = std::string(version);
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : doc.columns) cols.push_back(c.name);
  j["columns"] = cols;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (doc.columns[k].integer)
        r.push_back(static_cast<long long>(row[k]));
      else
        r.push_back(finite_or_null(row[k]));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

}  // namespace detail

inline Document build_document(const RunConfig& c) {
  validate(c);
  Document doc;
  switch (c.command) {
    case Command::State: doc = detail::state_document(c); break;
    case Command::Stats: doc = detail::stats_document(c); break;
    case Command::Husimi: doc = detail::husimi_document(c); break;
    case Command::Inversion: doc = detail::inversion_document(c); break;
    case Command::IdentityCheck: doc = detail::identity_document(c); break;
  }
  nlohmann::ordered_json meta;
  meta["config"] = detail::config_echo(c);
  for (const auto& [key, value] : doc.meta.items()) meta[key] = value;
  doc.meta = std::move(meta);
  return doc;
}

/// Runs one configuration, writing the document to `out` and any error to
/// `err`. Returns the process exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Document doc = build_document(c);
    if (c.format == Format::Csv)
      detail::emit_csv(doc, c.precision, out);
    else
      detail::emit_json(doc, out);
    return ok;
  } catch (const usage_error& e) {
    err << "lcs: usage error: " << e.what() << '\n';
    return usage;
  } catch (const convergence_error& e) {
    err << "lcs: convergence error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return convergence;
  } catch (const domain_error& e) {
    err << "lcs: numeric domain error: " << e.what() << '\n';
    return numeric_domain;
  }
}

}  // namespace lcs::cli
