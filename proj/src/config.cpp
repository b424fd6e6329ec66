#include "lgt/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace lgt {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

long long parse_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long out;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': expected an integer, got '" + v + "'");
  }
  if (pos != v.size())
    throw config_error("key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': expected a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw config_error("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw config_error("key '" + key + "': expected true or false, got '" + v + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  unsigned long long out;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': expected an unsigned integer");
  }
  if (pos != v.size() || v.find('-') != std::string::npos)
    throw config_error("key '" + key + "': expected an unsigned integer");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(int(parse_int(key, trim(item))));
  return out;
}

const char* const kKnownKeys[] = {
    "job",           "group",           "group.n",        "group.cutoff",
    "group.two_jmax", "lattice.dims",   "lattice.extent0", "lattice.extent1",
    "lattice.boundary", "matter.staggered", "couplings.g2", "couplings.mass",
    "couplings.hopping", "couplings.penalty", "terms.electric", "terms.mass",
    "terms.hopping", "terms.plaquette", "evolve.method",  "evolve.dt",
    "evolve.total_time", "evolve.dense_cap", "initial.state",
    "spectrum.count", "sector.charges", "output.dir",     "seed",
    "deterministic"};

}  // namespace

std::string job_name(Job j) {
  switch (j) {
    case Job::spectrum: return "spectrum";
    case Job::evolve: return "evolve";
    case Job::observables: return "observables";
    case Job::validate: return "validate";
  }
  throw internal_error("unreachable job");
}

Job job_from_name(const std::string& name) {
  if (name == "spectrum") return Job::spectrum;
  if (name == "evolve") return Job::evolve;
  if (name == "observables") return Job::observables;
  if (name == "validate") return Job::validate;
  throw config_error("unknown job '" + name + "'");
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.job == b.job && a.group.kind == b.group.kind &&
         a.group.n == b.group.n && a.group.cutoff == b.group.cutoff &&
         a.group.twice_jmax == b.group.twice_jmax &&
         a.geom.dims == b.geom.dims && a.geom.extent == b.geom.extent &&
         a.geom.boundary == b.geom.boundary &&
         a.matter.staggered == b.matter.staggered &&
         a.couplings == b.couplings && a.method == b.method &&
         a.dt == b.dt && a.total_time == b.total_time &&
         a.dense_cap == b.dense_cap && a.initial_state == b.initial_state &&
         a.spectrum_count == b.spectrum_count && a.charges == b.charges &&
         a.output_dir == b.output_dir && a.seed == b.seed &&
         a.deterministic == b.deterministic;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known)
      throw config_error("unknown key '" + key + "'");
    if (kv.count(key)) throw config_error("duplicate key '" + key + "'");
    kv[key] = value;
  }

  auto has = [&](const char* k) { return kv.count(k) != 0; };
  auto get = [&](const char* k) { return kv.at(k); };

  RunConfig cfg;

  if (!has("job")) throw config_error("missing required key 'job'");
  cfg.job = job_from_name(get("job"));

  if (!has("group")) throw config_error("missing required key 'group'");
  std::string group = get("group");
  if (group == "zn") {
    if (!has("group.n"))
      throw config_error("group = zn requires group.n");
    cfg.group = GroupSpec::cyclic(int(parse_int("group.n", get("group.n"))));
    if (has("group.cutoff") || has("group.two_jmax"))
      throw config_error("group.cutoff / group.two_jmax invalid for zn");
  } else if (group == "u1") {
    if (!has("group.cutoff"))
      throw config_error("group = u1 requires group.cutoff");
    cfg.group =
        GroupSpec::u1(int(parse_int("group.cutoff", get("group.cutoff"))));
    if (has("group.n") || has("group.two_jmax"))
      throw config_error("group.n / group.two_jmax invalid for u1");
  } else if (group == "su2") {
    if (!has("group.two_jmax"))
      throw config_error("group = su2 requires group.two_jmax");
    cfg.group = GroupSpec::su2(
        int(parse_int("group.two_jmax", get("group.two_jmax"))));
    if (has("group.n") || has("group.cutoff"))
      throw config_error("group.n / group.cutoff invalid for su2");
  } else {
    throw config_error("unknown group '" + group + "' (zn, u1, su2)");
  }

  cfg.geom.dims =
      has("lattice.dims") ? int(parse_int("lattice.dims", get("lattice.dims")))
                          : 2;
  if (cfg.geom.dims != 1 && cfg.geom.dims != 2)
    throw config_error("lattice.dims must be 1 or 2");
  if (!has("lattice.extent0"))
    throw config_error("missing required key 'lattice.extent0'");
  cfg.geom.extent[0] = int(parse_int("lattice.extent0", get("lattice.extent0")));
  if (cfg.geom.dims == 2) {
    if (!has("lattice.extent1"))
      throw config_error("lattice.dims = 2 requires lattice.extent1");
    cfg.geom.extent[1] =
        int(parse_int("lattice.extent1", get("lattice.extent1")));
  } else {
    if (has("lattice.extent1") &&
        parse_int("lattice.extent1", get("lattice.extent1")) != 1)
      throw config_error("lattice.extent1 must be 1 for a 1d lattice");
    cfg.geom.extent[1] = 1;
  }
  std::string boundary =
      has("lattice.boundary") ? get("lattice.boundary") : "open";
  if (boundary == "open")
    cfg.geom.boundary = Boundary::open;
  else if (boundary == "periodic")
    cfg.geom.boundary = Boundary::periodic;
  else
    throw config_error("lattice.boundary must be open or periodic");

  cfg.matter.staggered =
      has("matter.staggered")
          ? parse_bool("matter.staggered", get("matter.staggered"))
          : false;

  if (has("couplings.g2"))
    cfg.couplings.g2 = parse_double("couplings.g2", get("couplings.g2"));
  if (has("couplings.mass"))
    cfg.couplings.mass = parse_double("couplings.mass", get("couplings.mass"));
  if (has("couplings.hopping"))
    cfg.couplings.hopping =
        parse_double("couplings.hopping", get("couplings.hopping"));
  if (has("couplings.penalty"))
    cfg.couplings.penalty_strength =
        parse_double("couplings.penalty", get("couplings.penalty"));

  cfg.couplings.term_electric =
      has("terms.electric") ? parse_bool("terms.electric", get("terms.electric"))
                            : true;
  cfg.couplings.term_mass =
      has("terms.mass") ? parse_bool("terms.mass", get("terms.mass"))
                        : cfg.matter.staggered;
  cfg.couplings.term_hopping =
      has("terms.hopping") ? parse_bool("terms.hopping", get("terms.hopping"))
                           : cfg.matter.staggered;
  cfg.couplings.term_plaquette =
      has("terms.plaquette")
          ? parse_bool("terms.plaquette", get("terms.plaquette"))
          : cfg.geom.dims == 2;

  if (has("evolve.method")) {
    std::string m = get("evolve.method");
    if (m == "exact_dense")
      cfg.method = EvolveMethod::exact_dense;
    else if (m == "trotter1")
      cfg.method = EvolveMethod::trotter1;
    else if (m == "trotter2")
      cfg.method = EvolveMethod::trotter2;
    else
      throw config_error(
          "evolve.method must be exact_dense, trotter1, or trotter2");
  }
  if (has("evolve.dt")) cfg.dt = parse_double("evolve.dt", get("evolve.dt"));
  if (has("evolve.total_time"))
    cfg.total_time = parse_double("evolve.total_time", get("evolve.total_time"));
  if (has("evolve.dense_cap"))
    cfg.dense_cap = parse_int("evolve.dense_cap", get("evolve.dense_cap"));

  if (has("initial.state")) {
    cfg.initial_state = get("initial.state");
    if (cfg.initial_state != "vacuum" && cfg.initial_state != "ground")
      throw config_error("initial.state must be vacuum or ground");
  }
  if (has("spectrum.count"))
    cfg.spectrum_count = int(parse_int("spectrum.count", get("spectrum.count")));
  if (has("sector.charges"))
    cfg.charges = parse_int_list("sector.charges", get("sector.charges"));
  if (has("output.dir")) cfg.output_dir = get("output.dir");
  if (has("seed")) cfg.seed = parse_u64("seed", get("seed"));
  if (has("deterministic"))
    cfg.deterministic = parse_bool("deterministic", get("deterministic"));

  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "job = " << job_name(cfg.job) << "\n";
  switch (cfg.group.kind) {
    case GroupKind::cyclic_zn:
      out << "group = zn\n";
      out << "group.n = " << cfg.group.n << "\n";
      break;
    case GroupKind::truncated_u1:
      out << "group = u1\n";
      out << "group.cutoff = " << cfg.group.cutoff << "\n";
      break;
    case GroupKind::truncated_su2:
      out << "group = su2\n";
      out << "group.two_jmax = " << cfg.group.twice_jmax << "\n";
      break;
  }
  out << "lattice.dims = " << cfg.geom.dims << "\n";
  out << "lattice.extent0 = " << cfg.geom.extent[0] << "\n";
  if (cfg.geom.dims == 2)
    out << "lattice.extent1 = " << cfg.geom.extent[1] << "\n";
  out << "lattice.boundary = "
      << (cfg.geom.boundary == Boundary::open ? "open" : "periodic") << "\n";
  out << "matter.staggered = " << (cfg.matter.staggered ? "true" : "false")
      << "\n";
  out << "couplings.g2 = " << fmt_double(cfg.couplings.g2) << "\n";
  out << "couplings.mass = " << fmt_double(cfg.couplings.mass) << "\n";
  out << "couplings.hopping = " << fmt_double(cfg.couplings.hopping) << "\n";
  out << "couplings.penalty = " << fmt_double(cfg.couplings.penalty_strength)
      << "\n";
  out << "terms.electric = " << (cfg.couplings.term_electric ? "true" : "false")
      << "\n";
  out << "terms.mass = " << (cfg.couplings.term_mass ? "true" : "false")
      << "\n";
  out << "terms.hopping = " << (cfg.couplings.term_hopping ? "true" : "false")
      << "\n";
  out << "terms.plaquette = "
      << (cfg.couplings.term_plaquette ? "true" : "false") << "\n";
  switch (cfg.method) {
    case EvolveMethod::exact_dense: out << "evolve.method = exact_dense\n"; break;
    case EvolveMethod::trotter1: out << "evolve.method = trotter1\n"; break;
    case EvolveMethod::trotter2: out << "evolve.method = trotter2\n"; break;
  }
  out << "evolve.dt = " << fmt_double(cfg.dt) << "\n";
  out << "evolve.total_time = " << fmt_double(cfg.total_time) << "\n";
  out << "evolve.dense_cap = " << cfg.dense_cap << "\n";
  out << "initial.state = " << cfg.initial_state << "\n";
  out << "spectrum.count = " << cfg.spectrum_count << "\n";
  out << "sector.charges = ";
  for (std::size_t i = 0; i < cfg.charges.size(); ++i) {
    if (i) out << ",";
    out << cfg.charges[i];
  }
  out << "\n";
  out << "output.dir = " << cfg.output_dir << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "deterministic = " << (cfg.deterministic ? "true" : "false") << "\n";
  return out.str();
}

void validate_config(const RunConfig& cfg) {
  if (cfg.geom.extent[0] < 1 || cfg.geom.extent[1] < 1)
    throw config_error("lattice extents must be >= 1");
  if (cfg.geom.boundary == Boundary::periodic) {
    if (cfg.geom.extent[0] < 2 ||
        (cfg.geom.dims == 2 && cfg.geom.extent[1] < 2))
      throw config_error("periodic lattices need extent >= 2");
  }
  if (cfg.matter.staggered && cfg.group.kind == GroupKind::truncated_su2)
    throw config_error("staggered matter is only supported for Abelian groups");
  if ((cfg.couplings.term_mass || cfg.couplings.term_hopping) &&
      !cfg.matter.staggered)
    throw config_error("mass/hopping terms require matter.staggered = true");
  if (cfg.couplings.term_plaquette && cfg.geom.dims != 2)
    throw config_error("terms.plaquette requires lattice.dims = 2");
  if ((cfg.couplings.term_electric || cfg.couplings.term_plaquette) &&
      cfg.couplings.g2 <= 0)
    throw config_error("couplings.g2 must be > 0");
  if (cfg.couplings.penalty_strength < 0)
    throw config_error("couplings.penalty must be >= 0");
  if (cfg.job == Job::evolve) {
    if (cfg.dt <= 0) throw config_error("evolve.dt must be > 0");
    if (cfg.total_time < 0) throw config_error("evolve.total_time must be >= 0");
    if (cfg.dense_cap < 1) throw config_error("evolve.dense_cap must be >= 1");
  }
  if (cfg.spectrum_count < 1)
    throw config_error("spectrum.count must be >= 1");
  int sites = cfg.geom.extent[0] * (cfg.geom.dims == 2 ? cfg.geom.extent[1] : 1);
  if (!cfg.charges.empty() && int(cfg.charges.size()) != sites)
    throw config_error("sector.charges must list one charge per site");
  if (!cfg.charges.empty() &&
      cfg.group.kind == GroupKind::truncated_su2)
    for (int q : cfg.charges)
      if (q != 0)
        throw config_error("static charges unsupported for su2");
  if (cfg.output_dir.empty())
    throw config_error("output.dir must not be empty");
}

}  // namespace lgt
