#include "mclaw/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "mclaw/catalog.hpp"

namespace mclaw {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string line_tag(int line) { return "line " + std::to_string(line) + ": "; }

struct RawEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
  bool used = false;
};

struct SectionHeader {
  std::string name;
  int line = 0;
};

/// Scanned key/value soup plus the shared error sink every later stage
/// appends to, so one parse reports all problems together.
struct ParseState {
  std::vector<RawEntry> entries;
  std::vector<SectionHeader> sections;
  std::vector<std::string> errors;

  void error(int line, const std::string& msg) { errors.push_back(line_tag(line) + msg); }
  void error(const std::string& msg) { errors.push_back("config: " + msg); }

  RawEntry* take(const std::string& section, const std::string& key) {
    for (RawEntry& e : entries) {
      if (e.section == section && e.key == key) {
        e.used = true;
        return &e;
      }
    }
    return nullptr;
  }

  bool has_section(const std::string& name) const {
    for (const SectionHeader& s : sections) {
      if (s.name == name) return true;
    }
    return false;
  }

  int section_line(const std::string& name) const {
    for (const SectionHeader& s : sections) {
      if (s.name == name) return s.line;
    }
    return 0;
  }
};

void scan(const std::string& text, ParseState& st) {
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        st.error(line, "unterminated section header");
        continue;
      }
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) {
        st.error(line, "empty section name");
        continue;
      }
      st.sections.push_back({section, line});
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      st.error(line, "expected `key = value` or `[section]`");
      continue;
    }
    RawEntry e;
    e.section = section;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (e.key.empty()) {
      st.error(line, "missing key before '='");
      continue;
    }
    if (section.empty()) {
      st.error(line, "key '" + e.key + "' appears before any [section]");
      continue;
    }
    for (const RawEntry& prev : st.entries) {
      if (prev.section == e.section && prev.key == e.key) {
        st.error(line, "duplicate key '" + e.key + "' in [" + section + "] (first at line " +
                           std::to_string(prev.line) + ")");
        e.used = true;  // already reported; keep it out of the unknown-key pass
      }
    }
    st.entries.push_back(e);
  }
}

bool parse_double_value(ParseState& st, const RawEntry& e, double& out) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    out = v;
    return true;
  } catch (const std::exception&) {
    st.error(e.line, "expected a number for '" + e.key + "', got '" + e.value + "'");
    return false;
  }
}

bool parse_int_value(ParseState& st, const RawEntry& e, long& out) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
    out = v;
    return true;
  } catch (const std::exception&) {
    st.error(e.line, "expected an integer for '" + e.key + "', got '" + e.value + "'");
    return false;
  }
}

void read_double(ParseState& st, const std::string& sec, const std::string& key, double& out) {
  if (RawEntry* e = st.take(sec, key)) parse_double_value(st, *e, out);
}

void read_int(ParseState& st, const std::string& sec, const std::string& key, int& out,
              int* line = nullptr) {
  if (RawEntry* e = st.take(sec, key)) {
    long v = 0;
    if (parse_int_value(st, *e, v)) out = static_cast<int>(v);
    if (line) *line = e->line;
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : value) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  const std::string last = trim(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

bool parse_double_list(ParseState& st, const RawEntry& e, std::vector<double>& out) {
  out.clear();
  bool ok = true;
  for (const std::string& item : split_list(e.value)) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("trailing characters");
      out.push_back(v);
    } catch (const std::exception&) {
      st.error(e.line, "expected a comma list of numbers for '" + e.key + "', got '" + item + "'");
      ok = false;
    }
  }
  return ok;
}

Expression parse_expr(ParseState& st, const RawEntry& e, const std::set<std::string>& allowed) {
  try {
    return Expression::parse(e.value, allowed);
  } catch (const ExpressionError& ex) {
    st.error(e.line, std::string("in '") + e.key + "': " + ex.what());
    return Expression();
  }
}

const char* kMetricFamilies =
    "flat, dilation, expanding_circle, wavy_circle, torus_of_revolution, embedding";
const char* kFluxFamilies =
    "zero, burgers, linear_advection, killing_rotation, shear, compressible";

std::set<std::string> space_vars(int dim, bool with_time) {
  std::set<std::string> allowed = {"r1"};
  if (dim == 2) allowed.insert("r2");
  if (with_time) allowed.insert("t");
  return allowed;
}

/// Resolves [metric]; fills cfg.dim as a side effect.
void build_metric(ParseState& st, RunConfig& cfg) {
  const RawEntry* fam = st.take("metric", "family");
  if (!fam) {
    st.error("missing key 'family' in [metric] (available families: " +
             std::string(kMetricFamilies) + ")");
    return;
  }
  int dim = 0;  // 0 = not given
  int dim_line = fam->line;
  read_int(st, "metric", "dim", dim, &dim_line);
  if (dim != 0 && dim != 1 && dim != 2) {
    st.error(dim_line, "dim must be 1 or 2");
    dim = 0;
  }
  const std::string& f = fam->value;
  try {
    if (f == "flat") {
      cfg.dim = dim == 0 ? 1 : dim;
      cfg.metric = MetricField::flat(cfg.dim);
    } else if (f == "dilation") {
      cfg.dim = dim == 0 ? 1 : dim;
      double scale = 1.0, rate = 0.0;
      read_double(st, "metric", "scale", scale);
      read_double(st, "metric", "rate", rate);
      cfg.metric = MetricField::dilation(cfg.dim, scale, rate);
    } else if (f == "expanding_circle") {
      if (dim == 2) st.error(dim_line, "expanding_circle is one-dimensional");
      cfg.dim = 1;
      double radius = 1.0, rate = 1.0;
      read_double(st, "metric", "radius", radius);
      read_double(st, "metric", "rate", rate);
      cfg.metric = MetricField::expanding_circle(radius, rate);
    } else if (f == "wavy_circle") {
      if (dim == 2) st.error(dim_line, "wavy_circle is one-dimensional");
      cfg.dim = 1;
      double amplitude = 1.0;
      read_double(st, "metric", "amplitude", amplitude);
      cfg.metric = MetricField::wavy_circle(amplitude);
    } else if (f == "torus_of_revolution") {
      if (dim == 1) st.error(dim_line, "torus_of_revolution is two-dimensional");
      cfg.dim = 2;
      double major = 2.0, minor = 1.0;
      read_double(st, "metric", "major_radius", major);
      read_double(st, "metric", "minor_radius", minor);
      cfg.metric = MetricField::torus_of_revolution(major, minor);
    } else if (f == "embedding") {
      cfg.dim = dim == 0 ? 1 : dim;
      std::vector<Expression> components;
      const std::set<std::string> allowed = space_vars(cfg.dim, true);
      for (int i = 1; i <= 4; ++i) {
        if (RawEntry* e = st.take("metric", "x" + std::to_string(i))) {
          components.push_back(parse_expr(st, *e, allowed));
        }
      }
      if (components.empty()) {
        st.error(fam->line, "embedding needs component expressions x1, x2, ...");
      } else {
        cfg.metric = MetricField::custom_embedding(cfg.dim, std::move(components));
      }
    } else {
      st.error(fam->line, "unknown metric family '" + f + "' (available: " +
                              std::string(kMetricFamilies) + ")");
    }
  } catch (const ConfigError& ex) {
    for (const std::string& m : ex.messages) st.error(fam->line, m);
  } catch (const GeometryError& ex) {
    st.error(fam->line, ex.what());
  }
}

FluxProfile read_profile(ParseState& st) {
  if (RawEntry* e = st.take("flux", "profile")) {
    if (e->value == "linear") return FluxProfile::linear();
    if (e->value == "burgers") return FluxProfile::burgers();
    try {
      return FluxProfile::custom(Expression::parse(e->value, {"u"}));
    } catch (const ExpressionError& ex) {
      st.error(e->line, std::string("in 'profile': ") + ex.what());
    }
  }
  return FluxProfile::linear();
}

void build_flux(ParseState& st, RunConfig& cfg) {
  const RawEntry* fam = st.take("flux", "family");
  if (!fam) {
    st.error("missing key 'family' in [flux] (available families: " + std::string(kFluxFamilies) +
             ")");
    return;
  }
  const std::string& f = fam->value;
  const int dim = cfg.dim;
  auto axis_vector = [&](const char* key, double fallback) {
    Vec2 v = {fallback, 0.0};
    if (RawEntry* e = st.take("flux", key)) {
      std::vector<double> vals;
      if (parse_double_list(st, *e, vals)) {
        if (static_cast<int>(vals.size()) != dim) {
          st.error(e->line, std::string("'") + key + "' needs " + std::to_string(dim) +
                                " component(s)");
        } else {
          for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
        }
      }
    }
    return v;
  };
  try {
    if (f == "zero") {
      cfg.flux = FluxField::zero(dim);
    } else if (f == "burgers") {
      cfg.flux = FluxField::burgers(dim, axis_vector("direction", 1.0));
    } else if (f == "linear_advection") {
      cfg.flux = FluxField::linear_advection(dim, axis_vector("speed", 1.0));
    } else if (f == "killing_rotation") {
      if (dim != 2) st.error(fam->line, "killing_rotation needs dim = 2");
      double omega = 1.0;
      read_double(st, "flux", "omega", omega);
      cfg.flux = FluxField::killing_rotation(omega, read_profile(st));
    } else if (f == "shear") {
      if (dim != 2) st.error(fam->line, "shear needs dim = 2");
      double amplitude = 1.0;
      read_double(st, "flux", "amplitude", amplitude);
      cfg.flux = FluxField::shear(amplitude, read_profile(st));
    } else if (f == "compressible") {
      std::vector<Expression> field;
      const std::set<std::string> allowed = space_vars(dim, true);
      for (int i = 1; i <= dim; ++i) {
        if (RawEntry* e = st.take("flux", "field" + std::to_string(i))) {
          field.push_back(parse_expr(st, *e, allowed));
        } else {
          st.error(fam->line, "compressible flux needs field" + std::to_string(i));
        }
      }
      const FluxProfile profile = read_profile(st);
      if (static_cast<int>(field.size()) == dim) {
        cfg.flux = FluxField::compressible(dim, std::move(field), profile);
      }
    } else {
      st.error(fam->line,
               "unknown flux family '" + f + "' (available: " + std::string(kFluxFamilies) + ")");
    }
  } catch (const ConfigError& ex) {
    for (const std::string& m : ex.messages) st.error(fam->line, m);
  }
}

void read_solver(ParseState& st, RunConfig& cfg) {
  int n_line = 0;
  read_int(st, "solver", "n", cfg.n, &n_line);
  if (n_line != 0) {
    if (cfg.n < 4) st.error(n_line, "n must be >= 4");
    if (cfg.n > 65536) st.error(n_line, "n must be <= 65536");
  }
  if (RawEntry* e = st.take("solver", "scheme")) {
    if (e->value == "eo" || e->value == "engquist_osher") {
      cfg.solver.scheme = SchemeKind::EngquistOsher;
    } else if (e->value == "llf" || e->value == "lax_friedrichs") {
      cfg.solver.scheme = SchemeKind::LocalLaxFriedrichs;
    } else {
      st.error(e->line, "unknown scheme '" + e->value + "' (available: eo, llf)");
    }
  }
  if (RawEntry* e = st.take("solver", "cfl")) {
    if (parse_double_value(st, *e, cfg.solver.cfl) &&
        (!(cfg.solver.cfl > 0.0) || cfg.solver.cfl > 1.0)) {
      st.error(e->line, "cfl must be in (0, 1]");
    }
  }
  if (RawEntry* e = st.take("solver", "epsilon")) {
    if (parse_double_value(st, *e, cfg.solver.epsilon) && cfg.solver.epsilon < 0.0) {
      st.error(e->line, "epsilon must be >= 0");
    }
  }
  if (RawEntry* e = st.take("solver", "t_end")) {
    if (parse_double_value(st, *e, cfg.solver.t_end) && !(cfg.solver.t_end > 0.0)) {
      st.error(e->line, "t_end must be positive");
    }
    // Output times inherited from a scenario no longer apply; regenerate
    // from `outputs` unless this config pins its own list below.
    cfg.solver.output_times.clear();
  }
  if (RawEntry* e = st.take("solver", "max_steps")) {
    long v = 0;
    if (parse_int_value(st, *e, v)) {
      if (v <= 0) {
        st.error(e->line, "max_steps must be positive");
      } else {
        cfg.solver.max_steps = v;
      }
    }
  }
  RawEntry* outputs_entry = st.take("solver", "outputs");
  if (outputs_entry) {
    long v = 0;
    if (parse_int_value(st, *outputs_entry, v)) {
      if (v < 1) {
        st.error(outputs_entry->line, "outputs must be >= 1");
      } else {
        cfg.outputs = static_cast<int>(v);
        cfg.solver.output_times.clear();
      }
    }
  }
  if (RawEntry* e = st.take("solver", "output_times")) {
    if (outputs_entry) {
      st.error(e->line, "give either 'outputs' or 'output_times', not both");
    }
    std::vector<double> times;
    if (parse_double_list(st, *e, times)) {
      bool ok = !times.empty();
      for (std::size_t i = 0; i + 1 < times.size(); ++i) ok = ok && times[i] < times[i + 1];
      for (double t : times) ok = ok && t >= 0.0 && t <= cfg.solver.t_end;
      if (!ok) {
        st.error(e->line, "output_times must be strictly increasing within [0, t_end]");
      } else {
        cfg.solver.output_times = std::move(times);
      }
    }
  }
  if (RawEntry* e = st.take("solver", "envelope_subsamples")) {
    long v = 0;
    if (parse_int_value(st, *e, v)) {
      if (v < 1) {
        st.error(e->line, "envelope_subsamples must be >= 1");
      } else {
        cfg.envelope_subsamples = static_cast<int>(v);
      }
    }
  }
}

void read_checks(ParseState& st, RunConfig& cfg) {
  if (RawEntry* e = st.take("checks", "checks")) {
    cfg.checks.clear();
    for (const std::string& item : split_list(e->value)) {
      CheckRequest req;
      std::string params;
      const std::size_t paren = item.find('(');
      if (paren == std::string::npos) {
        req.name = item;
      } else {
        if (item.back() != ')') {
          st.error(e->line, "malformed check '" + item + "'");
          continue;
        }
        req.name = trim(item.substr(0, paren));
        params = item.substr(paren + 1, item.size() - paren - 2);
      }
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), req.name) == known.end()) {
        std::string list;
        for (const std::string& k : known) list += (list.empty() ? "" : ", ") + k;
        st.error(e->line, "unknown check '" + req.name + "' (available: " + list + ")");
        continue;
      }
      bool ok = true;
      if (!params.empty()) {
        for (const std::string& p : split_list(params)) {
          const std::size_t eq = p.find('=');
          const std::string key = eq == std::string::npos ? p : trim(p.substr(0, eq));
          const std::string val = eq == std::string::npos ? "" : trim(p.substr(eq + 1));
          try {
            if (key == "tol") {
              req.tol = std::stod(val);
              if (!(req.tol > 0.0)) throw std::invalid_argument("tol");
            } else if (key == "n") {
              req.ode_steps = std::stoi(val);
              if (req.ode_steps < 1) throw std::invalid_argument("n");
            } else {
              st.error(e->line, "unknown parameter '" + key + "' for check '" + req.name + "'");
              ok = false;
            }
          } catch (const std::exception&) {
            st.error(e->line, "bad value for parameter '" + key + "' in check '" + req.name + "'");
            ok = false;
          }
        }
      }
      if (ok) cfg.checks.push_back(std::move(req));
    }
  }
  if (RawEntry* e = st.take("checks", "seed")) {
    long v = 0;
    if (parse_int_value(st, *e, v)) {
      if (v < 0) {
        st.error(e->line, "seed must be nonnegative");
      } else {
        cfg.seed = static_cast<unsigned long>(v);
      }
    }
  }
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "mass", "linf", "tv_envelope", "tv_diminishing", "entropy", "oracle_l1", "lipschitz"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  ParseState st;
  scan(text, st);

  RunConfig cfg;
  const RawEntry* scenario = st.take("scenario", "name");
  if (scenario) {
    try {
      cfg = scenario_config(scenario->value);
    } catch (const ConfigError& ex) {
      for (const std::string& m : ex.messages) st.error(scenario->line, m);
    }
    for (const char* sec : {"metric", "flux", "initial"}) {
      if (st.has_section(sec)) {
        st.error(st.section_line(sec),
                 std::string("[") + sec + "] cannot be combined with a catalog scenario");
      }
    }
  } else {
    build_metric(st, cfg);
    build_flux(st, cfg);
    if (RawEntry* e = st.take("initial", "expression")) {
      cfg.initial = parse_expr(st, *e, space_vars(cfg.dim, false));
    }
  }
  if (RawEntry* e = st.take("scenario", "label")) cfg.label = e->value;

  read_solver(st, cfg);
  read_checks(st, cfg);

  // Everything not consumed is a typo or a key in the wrong section.
  static const std::set<std::string> sections = {"scenario", "metric", "flux",
                                                 "initial",  "solver", "checks"};
  for (const SectionHeader& s : st.sections) {
    if (!sections.count(s.name)) st.error(s.line, "unknown section [" + s.name + "]");
  }
  for (const RawEntry& e : st.entries) {
    if (!e.used && sections.count(e.section)) {
      st.error(e.line, "unknown key '" + e.key + "' in [" + e.section + "]");
    }
  }

  if (!st.errors.empty()) throw ConfigError(st.errors);

  if (cfg.solver.output_times.empty()) {
    for (int i = 1; i <= cfg.outputs; ++i) {
      cfg.solver.output_times.push_back(cfg.solver.t_end * static_cast<double>(i) / cfg.outputs);
    }
  }
  if (cfg.initial.empty()) cfg.initial = Expression::parse("0");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace mclaw
