// Command-line front end for the spinphase shared library. Talks to the
// engine exclusively through the public C API: `spectrum` prints eigenvalues
// with degeneracies, `gp` computes one geometric phase, `sweep` scans a
// parameter into CSV, `verify` replays the closed-form regressions and
// structural invariants and reports a pass/fail table.

#include <spinphase.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string fmt_short(double x) {  // shortest round-trip form, for the verify table
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int exit_for(sp_status status) {
  switch (status) {
    case SP_OK: return 0;
    case SP_ERR_GP_UNDEFINED:
    case SP_ERR_INCOMMENSURATE:
    case SP_ERR_NO_DRIVE: return 2;
    default: return 1;
  }
}

[[nodiscard]] int report_error(sp_status status) {
  std::cerr << "error: " << sp_status_name(status);
  const std::string detail = sp_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_for(status);
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 1;
}

// RAII wrappers around the opaque handles
struct Model {
  sp_model* handle = nullptr;
  ~Model() { sp_model_destroy(handle); }
  Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
};

struct State {
  sp_state* handle = nullptr;
  ~State() { sp_state_destroy(handle); }
  State() = default;
  State(const State&) = delete;
  State& operator=(const State&) = delete;
};

struct OutputSink {
  std::ofstream file;
  std::ostream* stream = nullptr;
};

bool open_sink(const std::string& path, OutputSink& sink) {
  if (path.empty()) {
    sink.stream = &std::cout;
    return true;
  }
  sink.file.open(path);
  if (!sink.file) return false;
  sink.stream = &sink.file;
  return true;
}

// ---- tiny dense complex helpers for the verify checks ---------------------

using Cplx = std::complex<double>;
using Mat6 = std::array<Cplx, 36>;
using Vec6 = std::array<Cplx, 6>;

Mat6 mat_from_raw(const double raw[72]) {
  Mat6 m;
  for (int k = 0; k < 36; ++k) m[k] = Cplx(raw[2 * k], raw[2 * k + 1]);
  return m;
}

Vec6 vec_from_raw(const double raw[12]) {
  Vec6 v;
  for (int k = 0; k < 6; ++k) v[k] = Cplx(raw[2 * k], raw[2 * k + 1]);
  return v;
}

Mat6 mat_mul(const Mat6& a, const Mat6& b) {
  Mat6 out{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      const Cplx aik = a[i * 6 + k];
      for (int j = 0; j < 6; ++j) out[i * 6 + j] += aik * b[k * 6 + j];
    }
  return out;
}

Mat6 mat_adjoint(const Mat6& a) {
  Mat6 out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i * 6 + j] = std::conj(a[j * 6 + i]);
  return out;
}

Mat6 mat_identity() {
  Mat6 out{};
  for (int i = 0; i < 6; ++i) out[i * 6 + i] = 1.0;
  return out;
}

double mat_max_abs_diff(const Mat6& a, const Mat6& b) {
  double worst = 0.0;
  for (int k = 0; k < 36; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

Vec6 mat_vec(const Mat6& a, const Vec6& v) {
  Vec6 out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i] += a[i * 6 + j] * v[j];
  return out;
}

Cplx vec_dot(const Vec6& a, const Vec6& b) {  // <a|b>
  Cplx out = 0.0;
  for (int i = 0; i < 6; ++i) out += std::conj(a[i]) * b[i];
  return out;
}

double factor_distance(double re, double im, double angle) {
  return std::hypot(re - std::cos(angle), im - std::sin(angle));
}

// deterministic 53-bit uniforms, independent of library distributions
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_bits() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// ---- shared option bundles -------------------------------------------------

struct ModelFlags {
  double coupling = 0.0;
  double anisotropy = 0.0;
  double field = 0.0;
};

struct StateFlags {
  double theta = 0.0, phi = 0.0;
  double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
  std::string weights_text;
};

struct RunFlags {
  int winding = 1;
  int panels = 1024;
  std::string output;
  bool degrees = false;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--j", flags.coupling, "exchange coupling J (nonzero)");
  cmd->add_option("--delta", flags.anisotropy, "anisotropy Delta");
  cmd->add_option("--b", flags.field, "drive field B");
}

void add_state_flags(CLI::App* cmd, StateFlags& flags) {
  cmd->add_option("--theta", flags.theta, "mixing angle for a two-fold ground space");
  cmd->add_option("--phi", flags.phi, "relative phase for a two-fold ground space");
  cmd->add_option("--theta1", flags.theta1, "first four-fold mixing angle");
  cmd->add_option("--theta2", flags.theta2, "second four-fold mixing angle");
  cmd->add_option("--theta3", flags.theta3, "third four-fold mixing angle");
  cmd->add_option("--phi1", flags.phi1, "four-fold relative phase 1");
  cmd->add_option("--phi2", flags.phi2, "four-fold relative phase 2");
  cmd->add_option("--phi3", flags.phi3, "four-fold relative phase 3");
  cmd->add_option("--weights", flags.weights_text,
                  "comma-separated mixture weights (diagonal mixed state)");
}

bool parse_weights(const std::string& text, std::vector<double>& out) {
  out.clear();
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      size_t used = 0;
      const double w = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) return false;
      out.push_back(w);
    } catch (...) {
      return false;
    }
  }
  return !out.empty();
}

// resolves the state flags into either a weights vector or an angle list
// (2 or 6 entries); nullopt plus a message on misuse
struct StateSpec {
  bool mixed = false;
  std::vector<double> values;  // weights, or angles in radians
};

std::optional<StateSpec> resolve_state(const CLI::App& cmd, const StateFlags& flags, bool degrees,
                                       std::string& message) {
  const bool has_weights = cmd.count("--weights") > 0;
  const bool has_pair = cmd.count("--theta") + cmd.count("--phi") > 0;
  const bool has_quad = cmd.count("--theta1") + cmd.count("--theta2") + cmd.count("--theta3") +
                            cmd.count("--phi1") + cmd.count("--phi2") + cmd.count("--phi3") >
                        0;
  const double to_rad = degrees ? kPi / 180.0 : 1.0;

  if (has_weights && (has_pair || has_quad)) {
    message = "--weights conflicts with the pure-state angle flags";
    return std::nullopt;
  }
  if (has_pair && has_quad) {
    message = "give either --theta/--phi or the --theta1..3/--phi1..3 family, not both";
    return std::nullopt;
  }
  StateSpec spec;
  if (has_weights) {
    spec.mixed = true;
    if (!parse_weights(flags.weights_text, spec.values)) {
      message = "could not parse --weights '" + flags.weights_text + "'";
      return std::nullopt;
    }
    return spec;
  }
  if (has_quad) {
    if (cmd.count("--theta1") == 0 || cmd.count("--theta2") == 0 || cmd.count("--theta3") == 0) {
      message = "a four-fold pure state needs all of --theta1 --theta2 --theta3";
      return std::nullopt;
    }
    spec.values = {flags.theta1 * to_rad, flags.theta2 * to_rad, flags.theta3 * to_rad,
                   flags.phi1 * to_rad,   flags.phi2 * to_rad,   flags.phi3 * to_rad};
    return spec;
  }
  if (has_pair) {
    if (cmd.count("--theta") == 0) {
      message = "--phi needs --theta";
      return std::nullopt;
    }
    spec.values = {flags.theta * to_rad, flags.phi * to_rad};
    return spec;
  }
  message = "no initial state given; use --theta[..] for a pure state or --weights for a mixture";
  return std::nullopt;
}

const char* regime_text(sp_regime regime) {
  switch (regime) {
    case SP_REGIME_ALIGNED_PAIR: return "ALIGNED_PAIR";
    case SP_REGIME_ENTANGLED_PAIR: return "ENTANGLED_PAIR";
    case SP_REGIME_FOURFOLD_CRITICAL: return "FOURFOLD_CRITICAL";
  }
  return "UNKNOWN";
}

// ---- spectrum ---------------------------------------------------------------

int run_spectrum(const ModelFlags& model_flags, const std::string& output) {
  Model model;
  sp_status status = sp_model_create(model_flags.coupling, model_flags.anisotropy,
                                     model_flags.field, &model.handle);
  if (status != SP_OK) return report_error(status);
  sp_regime regime;
  int degeneracy = 0;
  sp_model_regime(model.handle, &regime, &degeneracy);

  OutputSink sink;
  if (!open_sink(output, sink)) return usage_error("cannot open output path '" + output + "'");
  std::ostream& out = *sink.stream;
  out << "operator,level,energy,degeneracy,regime\n";
  const std::array<std::pair<sp_operator, const char*>, 3> selectors = {
      {{SP_OPERATOR_H0, "H0"}, {SP_OPERATOR_H1, "H1"}, {SP_OPERATOR_H, "H"}}};
  for (const auto& [selector, name] : selectors) {
    double evals[6];
    status = sp_model_spectrum(model.handle, selector, evals);
    if (status != SP_OK) return report_error(status);
    double scale = 1.0;
    for (double e : evals) scale = std::max(scale, std::abs(e));
    int level = 0;
    for (int i = 0; i < 6;) {
      int j = i;
      while (j + 1 < 6 && evals[j + 1] - evals[i] <= 1e-8 * scale) ++j;
      out << name << ',' << level << ',' << fmt(evals[i]) << ',' << (j - i + 1) << ','
          << regime_text(regime) << "\n";
      i = j + 1;
      ++level;
    }
  }
  return 0;
}

// ---- gp ----------------------------------------------------------------------

int run_gp(const CLI::App& cmd, const ModelFlags& model_flags, const StateFlags& state_flags,
           const RunFlags& run_flags) {
  std::string message;
  const auto spec = resolve_state(cmd, state_flags, run_flags.degrees, message);
  if (!spec) return usage_error(message);

  Model model;
  sp_status status = sp_model_create(model_flags.coupling, model_flags.anisotropy,
                                     model_flags.field, &model.handle);
  if (status != SP_OK) return report_error(status);
  sp_regime regime;
  int degeneracy = 0;
  sp_model_regime(model.handle, &regime, &degeneracy);

  sp_period period;
  status = sp_regime_period(model.handle, run_flags.winding, &period);
  if (status != SP_OK) return report_error(status);

  State state;
  status = spec->mixed
               ? sp_state_create_mixed(model.handle, spec->values.data(), spec->values.size(),
                                       &state.handle)
               : sp_state_create_pure(model.handle, spec->values.data(), spec->values.size(),
                                      &state.handle);
  if (status != SP_OK) return report_error(status);

  OutputSink sink;
  if (!open_sink(run_flags.output, sink))
    return usage_error("cannot open output path '" + run_flags.output + "'");
  std::ostream& out = *sink.stream;
  out << "gamma_total,gamma_dynamical,gamma_geometric,T,regime,note\n";
  if (spec->mixed) {
    sp_gp_factor factor;
    status = sp_mixed_gp(model.handle, state.handle, period.t, &factor);
    if (status != SP_OK) return report_error(status);
    double geometric = std::atan2(factor.value_im, factor.value_re);
    if (geometric < 0.0) geometric += kTwoPi;
    // a diagonal ground mixture commutes with H, so any period is cyclic
    out << ",," << fmt(geometric) << ',' << fmt(period.t) << ',' << regime_text(regime)
        << ",stationary\n";
  } else {
    sp_phase phase;
    status = sp_pure_gp(model.handle, state.handle, period.t, run_flags.panels, &phase);
    if (status != SP_OK) return report_error(status);
    out << fmt(phase.total) << ',' << fmt(phase.dynamical) << ',' << fmt(phase.geometric) << ','
        << fmt(period.t) << ',' << regime_text(regime) << ",\n";
  }
  return 0;
}

// ---- sweep --------------------------------------------------------------------

struct SweepFlags {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

int run_sweep(const CLI::App& cmd, const ModelFlags& model_flags, const StateFlags& state_flags,
              const RunFlags& run_flags, const SweepFlags& sweep_flags) {
  static const std::vector<std::string> kNames = {"j",      "delta",  "b",      "theta",
                                                  "phi",    "theta1", "theta2", "theta3"};
  std::string param = sweep_flags.parameter;
  for (char& c : param) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool known = false;
  for (const std::string& name : kNames) known = known || name == param;
  if (!known)
    return usage_error("unknown sweep parameter '" + sweep_flags.parameter +
                       "'; expected one of j, delta, b, theta, phi, theta1, theta2, theta3");
  if (sweep_flags.points < 2) return usage_error("sweep needs --points >= 2");
  if (!(sweep_flags.start < sweep_flags.stop)) return usage_error("sweep needs --start < --stop");

  const bool sweeping_angle = param != "j" && param != "delta" && param != "b";
  std::string message;
  std::optional<StateSpec> base_spec;
  if (sweeping_angle) {
    // the swept angle flag itself becomes optional; fabricate the family
    StateSpec spec;
    if (cmd.count("--weights") > 0)
      return usage_error("cannot sweep an angle of a mixed state; drop --weights");
    const double to_rad = run_flags.degrees ? kPi / 180.0 : 1.0;
    if (param == "theta" || param == "phi") {
      spec.values = {state_flags.theta * to_rad, state_flags.phi * to_rad};
    } else {
      spec.values = {state_flags.theta1 * to_rad, state_flags.theta2 * to_rad,
                     state_flags.theta3 * to_rad, state_flags.phi1 * to_rad,
                     state_flags.phi2 * to_rad,   state_flags.phi3 * to_rad};
    }
    base_spec = spec;
  } else {
    base_spec = resolve_state(cmd, state_flags, run_flags.degrees, message);
    if (!base_spec) return usage_error(message);
  }

  OutputSink sink;
  if (!open_sink(run_flags.output, sink))
    return usage_error("cannot open output path '" + run_flags.output + "'");
  std::ostream& out = *sink.stream;
  out << "param,value,regime,T,gamma_total,gamma_dynamical,gamma_geometric,closed_form,abs_error,"
         "error\n";

  const double to_rad = run_flags.degrees && sweeping_angle ? kPi / 180.0 : 1.0;
  // slot of the swept angle inside the value list
  int slot = -1;
  if (param == "theta" || param == "theta1") slot = 0;
  if (param == "phi" || param == "theta2") slot = 1;
  if (param == "theta3") slot = 2;

  for (int i = 0; i < sweep_flags.points; ++i) {
    const double value = sweep_flags.start + (sweep_flags.stop - sweep_flags.start) *
                                                 static_cast<double>(i) / (sweep_flags.points - 1);
    double coupling = model_flags.coupling;
    double anisotropy = model_flags.anisotropy;
    double field = model_flags.field;
    StateSpec spec = *base_spec;
    if (param == "j") coupling = value;
    if (param == "delta") anisotropy = value;
    if (param == "b") field = value;
    if (slot >= 0) spec.values[static_cast<size_t>(slot)] = value * to_rad;

    std::string regime_col, t_col, total_col, dynamical_col, geometric_col, closed_col,
        abs_err_col, error_col;
    do {
      Model model;
      sp_status status = sp_model_create(coupling, anisotropy, field, &model.handle);
      if (status != SP_OK) {
        error_col = sp_last_error();
        break;
      }
      sp_regime regime;
      int degeneracy = 0;
      sp_model_regime(model.handle, &regime, &degeneracy);
      regime_col = regime_text(regime);

      sp_period period;
      status = sp_regime_period(model.handle, run_flags.winding, &period);
      if (status != SP_OK) {
        error_col = sp_last_error();
        break;
      }
      t_col = fmt(period.t);

      State state;
      status = spec.mixed
                   ? sp_state_create_mixed(model.handle, spec.values.data(), spec.values.size(),
                                           &state.handle)
                   : sp_state_create_pure(model.handle, spec.values.data(), spec.values.size(),
                                          &state.handle);
      if (status != SP_OK) {
        error_col = sp_last_error();
        break;
      }

      double factor_re = 0.0, factor_im = 0.0;
      if (spec.mixed) {
        sp_gp_factor factor;
        status = sp_mixed_gp(model.handle, state.handle, period.t, &factor);
        if (status != SP_OK) {
          error_col = sp_last_error();
          break;
        }
        double geometric = std::atan2(factor.value_im, factor.value_re);
        if (geometric < 0.0) geometric += kTwoPi;
        geometric_col = fmt(geometric);
        factor_re = factor.value_re;
        factor_im = factor.value_im;
      } else {
        sp_phase phase;
        status = sp_pure_gp(model.handle, state.handle, period.t, run_flags.panels, &phase);
        if (status != SP_OK) {
          error_col = sp_last_error();
          break;
        }
        total_col = fmt(phase.total);
        dynamical_col = fmt(phase.dynamical);
        geometric_col = fmt(phase.geometric);
        factor_re = phase.factor_re;
        factor_im = phase.factor_im;
      }

      double closed = 0.0;
      if (spec.mixed) {
        status = sp_closed_form_mixed_gp(regime, &closed);
      } else {
        const double thetas2[1] = {spec.values[0]};
        const double thetas4[3] = {spec.values[0], spec.values[1], spec.values[2]};
        status = regime == SP_REGIME_FOURFOLD_CRITICAL
                     ? sp_closed_form_gp(regime, thetas4, 3, &closed)
                     : sp_closed_form_gp(regime, thetas2, 1, &closed);
      }
      if (status != SP_OK) {
        error_col = sp_last_error();
        break;
      }
      closed_col = fmt(closed);
      abs_err_col = fmt(factor_distance(factor_re, factor_im, closed));
    } while (false);

    for (char& c : error_col)  // keep the row parseable as plain CSV
      if (c == ',' || c == '\n') c = ';';
    out << param << ',' << fmt(value) << ',' << regime_col << ',' << t_col << ',' << total_col
        << ',' << dynamical_col << ',' << geometric_col << ',' << closed_col << ',' << abs_err_col
        << ',' << error_col << "\n";
  }
  return 0;
}

// ---- verify --------------------------------------------------------------------

struct CheckRow {
  std::string name;
  double expected;
  double actual;
  double tolerance;
  bool pass;
};

class Verifier {
 public:
  void push(std::string name, double expected, double actual, double tolerance) {
    rows_.push_back({std::move(name), expected, actual, tolerance,
                     std::isfinite(actual) && std::abs(actual - expected) <= tolerance});
  }

  int report() const {
    size_t width = 12;
    for (const CheckRow& row : rows_) width = std::max(width, row.name.size());
    std::cout << pad("check", width) << "  " << pad("expected", 10) << pad("actual", 26)
              << pad("tolerance", 11) << "status\n";
    size_t passed = 0;
    for (const CheckRow& row : rows_) {
      std::cout << pad(row.name, width) << "  " << pad(fmt_short(row.expected), 10)
                << pad(fmt_short(row.actual), 26) << pad(fmt_short(row.tolerance), 11)
                << (row.pass ? "PASS" : "FAIL") << "\n";
      if (row.pass) ++passed;
    }
    std::cout << "verify: " << passed << "/" << rows_.size() << " checks passed\n";
    return passed == rows_.size() ? 0 : 2;
  }

 private:
  static std::string pad(const std::string& text, size_t width) {
    std::string out = text;
    if (out.size() < width) out.append(width - out.size(), ' ');
    out.push_back(' ');
    return out;
  }
  std::vector<CheckRow> rows_;
};

constexpr double kBadValue = std::numeric_limits<double>::quiet_NaN();

// pure-state pipeline: regime period + total/dynamical/geometric phase
std::optional<sp_phase> pipeline_phase(double j, double delta, double b,
                                       const std::vector<double>& angles, double* period_out) {
  Model model;
  if (sp_model_create(j, delta, b, &model.handle) != SP_OK) return std::nullopt;
  sp_period period;
  if (sp_regime_period(model.handle, 1, &period) != SP_OK) return std::nullopt;
  State state;
  if (sp_state_create_pure(model.handle, angles.data(), angles.size(), &state.handle) != SP_OK)
    return std::nullopt;
  sp_phase phase;
  if (sp_pure_gp(model.handle, state.handle, period.t, 1024, &phase) != SP_OK) return std::nullopt;
  if (period_out != nullptr) *period_out = period.t;
  return phase;
}

double pair_regression(double j, double delta, const std::vector<double>& fields, bool aligned) {
  double worst = 0.0;
  for (double b : fields)
    for (double phi : {0.0, kPi / 3.0, 1.7})
      for (int i = 0; i < 25; ++i) {
        const double theta = 0.5 * kPi * static_cast<double>(i) / 24.0;
        const auto phase = pipeline_phase(j, delta, b, {theta, phi}, nullptr);
        if (!phase) return kBadValue;
        const double c = std::cos(theta), s = std::sin(theta);
        const double closed = aligned ? kTwoPi * c * c : kTwoPi * s * s;
        worst = std::max(worst,
                         factor_distance(phase->factor_re, phase->factor_im, closed));
      }
  return worst;
}

double fourfold_closed_form(double t1, double t2, double t3) {
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  return kPi * (1.0 - 3.0 * c1 * c1 + s1 * s1 * (3.0 * c2 * c2 - std::cos(2.0 * t3) * s2 * s2));
}

double fourfold_regression() {
  double worst = 0.0;
  std::array<double, 5> grid;
  for (int i = 0; i < 5; ++i) grid[static_cast<size_t>(i)] = 0.5 * kPi * i / 4.0;
  for (double t1 : grid)
    for (double t2 : grid)
      for (double t3 : grid)
        for (double p1 : {0.0, 0.9})
          for (double p2 : {0.0, 0.9})
            for (double p3 : {0.0, 0.9}) {
              const auto phase =
                  pipeline_phase(1.0, -1.0, 1.0, {t1, t2, t3, p1, p2, p3}, nullptr);
              if (!phase) return kBadValue;
              worst = std::max(worst, factor_distance(phase->factor_re, phase->factor_im,
                                                      fourfold_closed_form(t1, t2, t3)));
            }
  return worst;
}

double period_deviation(double j, double delta, double splitting_per_b) {
  double worst = 0.0;
  for (double b : {0.25, 1.0, 4.0})
    for (int winding : {1, 3}) {
      Model model;
      if (sp_model_create(j, delta, b, &model.handle) != SP_OK) return kBadValue;
      sp_period period;
      if (sp_regime_period(model.handle, winding, &period) != SP_OK) return kBadValue;
      const double expected = winding * kTwoPi / (splitting_per_b * b);
      worst = std::max(worst, std::abs(period.t / expected - 1.0));
    }
  return worst;
}

struct RegimeConfig {
  double j, delta;
  int degeneracy;
};

const std::array<RegimeConfig, 6>& regime_configs() {
  static const std::array<RegimeConfig, 6> configs = {{
      {1.0, -2.0, 2},  // aligned, J > 0
      {1.0, 0.0, 2},   // entangled, J > 0
      {1.0, -1.0, 4},  // four-fold, J > 0
      {-1.0, 2.0, 2},  // aligned, J < 0
      {-1.0, 0.0, 2},  // entangled, J < 0
      {-1.0, 1.0, 4},  // four-fold, J < 0
  }};
  return configs;
}

double mixed_null_regression(Rng& rng) {
  double worst = 0.0;
  for (const RegimeConfig& config : regime_configs()) {
    Model model;
    if (sp_model_create(config.j, config.delta, 1.0, &model.handle) != SP_OK) return kBadValue;
    sp_period period;
    if (sp_regime_period(model.handle, 1, &period) != SP_OK) return kBadValue;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> weights(static_cast<size_t>(config.degeneracy));
      double sum = 0.0;
      for (double& w : weights) {
        w = rng.uniform(0.05, 1.0);
        sum += w;
      }
      for (double& w : weights) w /= sum;
      State state;
      if (sp_state_create_mixed(model.handle, weights.data(), weights.size(), &state.handle) !=
          SP_OK)
        return kBadValue;
      sp_gp_factor factor;
      if (sp_mixed_gp(model.handle, state.handle, period.t, &factor) != SP_OK) return kBadValue;
      worst = std::max(worst, std::hypot(factor.value_re - 1.0, factor.value_im));
    }
  }
  return worst;
}

double reduced_vs_pure_regression(Rng& rng) {
  double worst = 0.0;
  int produced = 0;
  while (produced < 200) {
    for (const RegimeConfig& config : regime_configs()) {
      if (produced >= 200) break;
      std::vector<double> angles;
      if (config.degeneracy == 2) {
        angles = {rng.uniform(0.0, kPi), rng.uniform(0.0, kTwoPi)};
      } else {
        angles = {rng.uniform(0.0, kPi),     rng.uniform(0.0, kPi),
                  rng.uniform(0.0, kPi),     rng.uniform(0.0, kTwoPi),
                  rng.uniform(0.0, kTwoPi),  rng.uniform(0.0, kTwoPi)};
      }
      Model model;
      if (sp_model_create(config.j, config.delta, 1.0, &model.handle) != SP_OK) return kBadValue;
      sp_period period;
      if (sp_regime_period(model.handle, 1, &period) != SP_OK) return kBadValue;
      State state;
      if (sp_state_create_pure(model.handle, angles.data(), angles.size(), &state.handle) != SP_OK)
        return kBadValue;
      sp_phase pure, reduced;
      if (sp_pure_gp(model.handle, state.handle, period.t, 1024, &pure) != SP_OK) return kBadValue;
      if (sp_reduced_gp(model.handle, state.handle, period.t, &reduced) != SP_OK) return kBadValue;
      worst = std::max(worst, std::hypot(pure.factor_re - reduced.factor_re,
                                         pure.factor_im - reduced.factor_im));
      ++produced;
    }
  }
  return worst;
}

double offdiag_vs_diagonal_regression(Rng& rng) {
  double worst = 0.0;
  for (const RegimeConfig& config : regime_configs()) {
    Model model;
    if (sp_model_create(config.j, config.delta, 1.0, &model.handle) != SP_OK) return kBadValue;
    sp_period period;
    if (sp_regime_period(model.handle, 1, &period) != SP_OK) return kBadValue;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> weights(static_cast<size_t>(config.degeneracy));
      double sum = 0.0;
      for (double& w : weights) {
        w = rng.uniform(0.05, 1.0);
        sum += w;
      }
      for (double& w : weights) w /= sum;
      State state;
      if (sp_state_create_mixed(model.handle, weights.data(), weights.size(), &state.handle) !=
          SP_OK)
        return kBadValue;
      sp_gp_factor diagonal, offdiag;
      if (sp_mixed_gp(model.handle, state.handle, period.t, &diagonal) != SP_OK) return kBadValue;
      if (sp_off_diagonal_gp(model.handle, period.t, 1, weights.data(), &offdiag) != SP_OK)
        return kBadValue;
      worst = std::max(worst, std::hypot(diagonal.value_re - offdiag.value_re,
                                         diagonal.value_im - offdiag.value_im));
    }
  }
  return worst;
}

const std::vector<std::pair<double, double>>& structural_grid() {
  static const std::vector<std::pair<double, double>> grid = [] {
    std::vector<std::pair<double, double>> out;
    for (double j : {1.0, -1.0, 2.0, -2.0})
      for (double delta : {-2.7, -1.3, -0.4, 0.0, 0.8, 1.9, 2.6}) out.push_back({j, delta});
    return out;
  }();
  return grid;
}

double commutator_regression() {
  double worst = 0.0;
  for (const auto& [j, delta] : structural_grid()) {
    Model model;
    if (sp_model_create(j, delta, 1.3, &model.handle) != SP_OK) return kBadValue;
    double raw0[72], raw1[72];
    if (sp_model_operator_matrix(model.handle, SP_OPERATOR_H0, raw0) != SP_OK) return kBadValue;
    if (sp_model_operator_matrix(model.handle, SP_OPERATOR_H1, raw1) != SP_OK) return kBadValue;
    const Mat6 h0 = mat_from_raw(raw0), h1 = mat_from_raw(raw1);
    worst = std::max(worst, mat_max_abs_diff(mat_mul(h0, h1), mat_mul(h1, h0)));
  }
  return worst;
}

double unitarity_regression(Rng& rng) {
  double worst = 0.0;
  for (const auto& [j, delta] : structural_grid()) {
    Model model;
    if (sp_model_create(j, delta, 0.8, &model.handle) != SP_OK) return kBadValue;
    double raw[72];
    if (sp_model_propagator(model.handle, rng.uniform(0.1, 7.0), raw) != SP_OK) return kBadValue;
    const Mat6 u = mat_from_raw(raw);
    worst = std::max(worst, mat_max_abs_diff(mat_mul(mat_adjoint(u), u), mat_identity()));
  }
  return worst;
}

double ground_energy_regression() {
  double worst = 0.0;
  for (const auto& [j, delta] : structural_grid()) {
    Model model;
    if (sp_model_create(j, delta, 0.0, &model.handle) != SP_OK) return kBadValue;
    double energy = 0.0, evals[6];
    if (sp_model_ground_energy(model.handle, &energy) != SP_OK) return kBadValue;
    if (sp_model_spectrum(model.handle, SP_OPERATOR_H0, evals) != SP_OK) return kBadValue;
    worst = std::max(worst, std::abs(energy - evals[0]));
  }
  return worst;
}

double ground_residual_regression() {
  double worst = 0.0;
  for (const auto& [j, delta] : structural_grid()) {
    Model model;
    if (sp_model_create(j, delta, 0.0, &model.handle) != SP_OK) return kBadValue;
    sp_regime regime;
    int degeneracy = 0;
    sp_model_regime(model.handle, &regime, &degeneracy);
    double energy = 0.0;
    sp_model_ground_energy(model.handle, &energy);
    double raw_h0[72];
    if (sp_model_operator_matrix(model.handle, SP_OPERATOR_H0, raw_h0) != SP_OK) return kBadValue;
    const Mat6 h0 = mat_from_raw(raw_h0);
    std::vector<double> raw(static_cast<size_t>(12 * degeneracy));
    if (sp_model_ground_basis(model.handle, raw.data(), raw.size()) != SP_OK) return kBadValue;
    for (int k = 0; k < degeneracy; ++k) {
      const Vec6 v = vec_from_raw(raw.data() + 12 * k);
      const Vec6 hv = mat_vec(h0, v);
      double residual = 0.0;
      for (int i = 0; i < 6; ++i) residual += std::norm(hv[i] - energy * v[i]);
      worst = std::max(worst, std::sqrt(residual));
    }
  }
  return worst;
}

double phi_gauge_regression() {
  double worst = 0.0;
  for (double delta : {-2.0, 0.0}) {
    for (double theta : {0.3, 0.9, 1.4}) {
      const auto reference = pipeline_phase(1.0, delta, 1.0, {theta, 0.0}, nullptr);
      if (!reference) return kBadValue;
      for (double phi : {0.9, 2.3, kPi}) {
        const auto phase = pipeline_phase(1.0, delta, 1.0, {theta, phi}, nullptr);
        if (!phase) return kBadValue;
        worst = std::max(worst, std::hypot(phase->factor_re - reference->factor_re,
                                           phase->factor_im - reference->factor_im));
      }
    }
  }
  return worst;
}

double simpson_regression() {
  double worst = 0.0;
  for (const RegimeConfig& config : regime_configs()) {
    Model model;
    if (sp_model_create(config.j, config.delta, 1.0, &model.handle) != SP_OK) return kBadValue;
    sp_period period;
    if (sp_regime_period(model.handle, 1, &period) != SP_OK) return kBadValue;
    std::vector<double> angles = config.degeneracy == 2
                                     ? std::vector<double>{0.7, 0.4}
                                     : std::vector<double>{0.7, 0.8, 0.9, 0.2, 0.4, 0.6};
    State state;
    if (sp_state_create_pure(model.handle, angles.data(), angles.size(), &state.handle) != SP_OK)
      return kBadValue;
    sp_phase phase;
    if (sp_pure_gp(model.handle, state.handle, period.t, 1024, &phase) != SP_OK) return kBadValue;
    double raw_h[72], raw_psi[12];
    if (sp_model_operator_matrix(model.handle, SP_OPERATOR_H, raw_h) != SP_OK) return kBadValue;
    if (sp_state_vector(state.handle, raw_psi) != SP_OK) return kBadValue;
    const Mat6 h = mat_from_raw(raw_h);
    const Vec6 psi = vec_from_raw(raw_psi);
    const double expectation = vec_dot(psi, mat_vec(h, psi)).real();
    worst = std::max(worst, std::abs(phase.dynamical + expectation * period.t));
  }
  return worst;
}

double b_scale_regression() {
  double worst = 0.0;
  const auto reference = pipeline_phase(1.0, 0.0, 1.0, {0.6, 0.3}, nullptr);
  if (!reference) return kBadValue;
  for (double b : {0.25, 4.0}) {
    const auto phase = pipeline_phase(1.0, 0.0, b, {0.6, 0.3}, nullptr);
    if (!phase) return kBadValue;
    worst = std::max(worst, std::hypot(phase->factor_re - reference->factor_re,
                                       phase->factor_im - reference->factor_im));
  }
  return worst;
}

int run_verify() {
  Verifier verifier;
  Rng rng(0x5eed5eed5eedull);

  verifier.push("aligned_cos2_j_pos", 0.0, pair_regression(1.0, -2.0, {0.5, 1.0, 2.0}, true),
                1e-9);
  verifier.push("aligned_cos2_j_neg", 0.0, pair_regression(-1.0, 2.0, {1.0}, true), 1e-9);
  verifier.push("entangled_sin2_j_pos", 0.0, pair_regression(1.0, 0.0, {0.5, 1.0, 2.0}, false),
                1e-9);
  verifier.push("entangled_sin2_j_neg", 0.0, pair_regression(-1.0, 0.0, {1.0}, false), 1e-9);
  verifier.push("period_aligned_2pi_over_3b", 0.0, period_deviation(1.0, -2.0, 3.0), 1e-12);
  verifier.push("period_entangled_2pi_over_b", 0.0, period_deviation(1.0, 0.0, 1.0), 1e-12);
  verifier.push("period_fourfold_2pi_over_b", 0.0, period_deviation(1.0, -1.0, 1.0), 1e-12);
  verifier.push("fourfold_grid_formula", 0.0, fourfold_regression(), 1e-9);
  {
    const std::vector<double> magic = {std::atan(std::sqrt(3.0)), std::atan(std::sqrt(2.0)),
                                       kPi / 4.0, 0.0, 0.0, 0.0};
    const auto phase = pipeline_phase(1.0, -1.0, 1.0, magic, nullptr);
    verifier.push("fourfold_special_point", 0.0,
                  phase ? factor_distance(phase->factor_re, phase->factor_im, kPi) : kBadValue,
                  1e-10);
  }
  verifier.push("mixed_diagonal_null", 0.0, mixed_null_regression(rng), 1e-10);
  verifier.push("reduced_matches_pure", 0.0, reduced_vs_pure_regression(rng), 1e-9);
  verifier.push("offdiag_order1_matches_diagonal", 0.0, offdiag_vs_diagonal_regression(rng),
                1e-12);
  verifier.push("h0_h1_commutator", 0.0, commutator_regression(), 1e-12);
  verifier.push("propagator_unitarity", 0.0, unitarity_regression(rng), 1e-10);
  verifier.push("ground_energy_vs_spectrum", 0.0, ground_energy_regression(), 1e-10);
  verifier.push("ground_basis_residual", 0.0, ground_residual_regression(), 1e-10);
  verifier.push("phi_gauge_invariance", 0.0, phi_gauge_regression(), 1e-10);
  verifier.push("simpson_vs_algebraic_dynamical", 0.0, simpson_regression(), 1e-10);
  verifier.push("b_scale_invariance", 0.0, b_scale_regression(), 1e-9);

  return verifier.report();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric phases of a driven spin-1 x spin-1/2 Heisenberg pair"};
  app.require_subcommand(1);

  ModelFlags spectrum_model;
  std::string spectrum_output;
  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and ground-space regime");
  add_model_flags(spectrum, spectrum_model);
  spectrum->add_option("--output", spectrum_output, "write CSV here instead of stdout");

  ModelFlags gp_model;
  StateFlags gp_state;
  RunFlags gp_run;
  CLI::App* gp = app.add_subcommand("gp", "geometric phase of one initial state over one period");
  add_model_flags(gp, gp_model);
  add_state_flags(gp, gp_state);
  gp->add_option("--n", gp_run.winding, "winding: number of minimal periods")
      ->check(CLI::PositiveNumber);
  gp->add_option("--steps", gp_run.panels, "Simpson panels for the dynamical phase")
      ->check(CLI::PositiveNumber);
  gp->add_option("--output", gp_run.output, "write CSV here instead of stdout");
  gp->add_flag("--degrees", gp_run.degrees, "angle flags are given in degrees");

  ModelFlags sweep_model;
  StateFlags sweep_state;
  RunFlags sweep_run;
  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "scan one parameter and emit CSV rows");
  add_model_flags(sweep, sweep_model);
  add_state_flags(sweep, sweep_state);
  sweep->add_option("--param", sweep_flags.parameter,
                    "swept parameter: j, delta, b, theta, phi, theta1, theta2, theta3")
      ->required();
  sweep->add_option("--start", sweep_flags.start, "first grid value")->required();
  sweep->add_option("--stop", sweep_flags.stop, "last grid value")->required();
  sweep->add_option("--points", sweep_flags.points, "grid size (>= 2)")->required();
  sweep->add_option("--n", sweep_run.winding, "winding: number of minimal periods")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--steps", sweep_run.panels, "Simpson panels for the dynamical phase")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--output", sweep_run.output, "write CSV here instead of stdout");
  sweep->add_flag("--degrees", sweep_run.degrees, "angle flags and grid are given in degrees");

  CLI::App* verify = app.add_subcommand(
      "verify", "re-run the closed-form regressions and structural invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (spectrum->parsed()) return run_spectrum(spectrum_model, spectrum_output);
  if (gp->parsed()) return run_gp(*gp, gp_model, gp_state, gp_run);
  if (sweep->parsed()) return run_sweep(*sweep, sweep_model, sweep_state, sweep_run, sweep_flags);
  if (verify->parsed()) return run_verify();
  return usage_error("no subcommand given");
}
