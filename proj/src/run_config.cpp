#include "casfilm/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "casfilm/errors.hpp"
#include "casfilm/spectrum_io.hpp"

namespace casfilm {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line_no) + ": " +
                        what);
}

double to_double(const std::string& value, const std::string& key,
                 std::size_t line_no) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail_line(line_no, "key '" + key + "': '" + value + "' is not a number");
  return out;
}

int to_int(const std::string& value, const std::string& key,
           std::size_t line_no) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail_line(line_no, "key '" + key + "': '" + value + "' is not an integer");
  return out;
}

std::vector<Oscillator> to_oscillators(const std::string& value,
                                       const std::string& key,
                                       std::size_t line_no) {
  std::vector<Oscillator> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    auto next = value.find(';', pos);
    const std::string term =
        trim(value.substr(pos, next == std::string::npos ? next : next - pos));
    if (term.empty())
      fail_line(line_no, "key '" + key + "': empty oscillator term");
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (true) {
      auto c = term.find(',', p);
      if (c == std::string::npos) {
        parts.push_back(trim(term.substr(p)));
        break;
      }
      parts.push_back(trim(term.substr(p, c - p)));
      p = c + 1;
    }
    if (parts.size() != 3)
      fail_line(line_no, "key '" + key +
                             "': an oscillator is 'plasma,resonance,damping' "
                             "(eV), terms separated by ';'");
    out.push_back(Oscillator{to_double(parts[0], key, line_no),
                             to_double(parts[1], key, line_no),
                             to_double(parts[2], key, line_no)});
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// raw key/value with the line it came from, grouped per section
struct RawEntry {
  std::string value;
  std::size_t line_no = 0;
};
using RawSection = std::map<std::string, RawEntry>;

struct RawConfig {
  RawEntry mode;
  bool has_mode = false;
  std::map<std::string, RawSection> sections;
};

RawConfig tokenize(const std::string& text) {
  static const std::set<std::string> known_sections = {
      "film1", "film2", "separation", "quadrature", "output"};

  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::string current;  // empty until the first section header
  bool in_section = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;

    if (t.front() == '[') {
      if (t.back() != ']')
        fail_line(line_no, "section header is missing the closing ']'");
      const std::string name = trim(t.substr(1, t.size() - 2));
      if (!known_sections.count(name))
        fail_line(line_no, "unknown section [" + name + "]");
      if (raw.sections.count(name))
        fail_line(line_no, "section [" + name + "] appears twice");
      raw.sections.emplace(name, RawSection{});
      current = name;
      in_section = true;
      continue;
    }

    auto eq = t.find('=');
    if (eq == std::string::npos)
      fail_line(line_no, "expected 'key = value' or '[section]'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail_line(line_no, "empty key before '='");

    if (!in_section) {
      if (key != "mode")
        fail_line(line_no,
                  "key '" + key + "' must appear inside a [section]");
      if (raw.has_mode) fail_line(line_no, "duplicate key 'mode'");
      raw.mode = RawEntry{value, line_no};
      raw.has_mode = true;
      continue;
    }

    auto& section = raw.sections[current];
    if (section.count(key))
      fail_line(line_no,
                "duplicate key '" + key + "' in [" + current + "]");
    section.emplace(key, RawEntry{value, line_no});
  }
  return raw;
}

// Pops entries out of a raw section as they are consumed so that anything
// left over can be reported as an unknown key.
class SectionReader {
 public:
  SectionReader(std::string name, RawSection section)
      : name_(std::move(name)), section_(std::move(section)) {}

  std::optional<RawEntry> take(const std::string& key) {
    auto it = section_.find(key);
    if (it == section_.end()) return std::nullopt;
    RawEntry entry = it->second;
    section_.erase(it);
    return entry;
  }

  void finish() const {
    if (section_.empty()) return;
    const auto& [key, entry] = *section_.begin();
    fail_line(entry.line_no, "unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  std::string name_;
  RawSection section_;
};

std::optional<OscillatorAxisSpec> read_axis(SectionReader& reader,
                                            const std::string& film,
                                            const std::string& axis) {
  auto osc = reader.take("osc_" + axis);
  auto inf = reader.take("eps_inf_" + axis);
  if (!osc) {
    if (inf)
      fail_line(inf->line_no, "key 'eps_inf_" + axis + "' in [" + film +
                                  "] needs a matching 'osc_" + axis + "'");
    return std::nullopt;
  }
  OscillatorAxisSpec spec;
  spec.oscillators = to_oscillators(osc->value, "osc_" + axis, osc->line_no);
  if (inf) spec.eps_inf = to_double(inf->value, "eps_inf_" + axis,
                                    inf->line_no);
  return spec;
}

FilmSpec read_film(const std::string& name, RawSection raw) {
  SectionReader reader(name, std::move(raw));
  FilmSpec spec;

  if (auto e = reader.take("thickness_nm"))
    spec.thickness_nm = to_double(e->value, "thickness_nm", e->line_no);
  if (auto e = reader.take("orientation_rad"))
    spec.orientation_rad = to_double(e->value, "orientation_rad", e->line_no);

  if (auto e = reader.take("source")) {
    if (e->value == "oscillators") {
      spec.source = FilmSpec::Source::oscillators;
    } else if (e->value == "table") {
      spec.source = FilmSpec::Source::table;
    } else {
      fail_line(e->line_no, "key 'source': expected 'oscillators' or "
                            "'table', got '" + e->value + "'");
    }
  }

  spec.osc_xx = read_axis(reader, name, "xx");
  spec.osc_yy = read_axis(reader, name, "yy");
  spec.osc_zz = read_axis(reader, name, "zz");

  if (auto e = reader.take("data_file")) spec.data_file = e->value;
  if (auto e = reader.take("xi_min_ev"))
    spec.xi_min_ev = to_double(e->value, "xi_min_ev", e->line_no);
  if (auto e = reader.take("xi_max_ev"))
    spec.xi_max_ev = to_double(e->value, "xi_max_ev", e->line_no);
  if (auto e = reader.take("xi_points"))
    spec.xi_points = to_int(e->value, "xi_points", e->line_no);
  reader.finish();

  // cross-key consistency; messages name the section since the line that
  // is wrong may be the one that is absent
  auto fail_film = [&](const std::string& what) {
    throw ValidationError("[" + name + "]: " + what);
  };
  if (spec.source == FilmSpec::Source::oscillators) {
    if (!spec.data_file.empty())
      fail_film("key 'data_file' needs source = table");
    if (!spec.osc_xx) fail_film("source = oscillators needs 'osc_xx'");
  } else {
    if (spec.osc_xx || spec.osc_yy || spec.osc_zz)
      fail_film("oscillator keys conflict with source = table");
    if (spec.data_file.empty()) fail_film("source = table needs 'data_file'");
    if (!(spec.xi_min_ev > 0.0))
      fail_film("key 'xi_min_ev': must be positive");
    if (!(spec.xi_max_ev > spec.xi_min_ev))
      fail_film("key 'xi_max_ev': must exceed xi_min_ev");
    if (spec.xi_points < 3) fail_film("key 'xi_points': needs at least 3");
  }

  if (spec.thickness_nm && !(*spec.thickness_nm > 0.0))
    fail_film("key 'thickness_nm': thickness must be positive");
  if (!std::isfinite(spec.orientation_rad))
    fail_film("key 'orientation_rad': must be finite");

  // physical screening of oscillator parameters happens here rather than
  // at materialization so a bad config fails before any computation
  auto screen = [&](const std::optional<OscillatorAxisSpec>& axis,
                    const std::string& key) {
    if (!axis) return;
    try {
      OscillatorSet probe(axis->oscillators, axis->eps_inf);
    } catch (const ValidationError& e) {
      fail_film("key '" + key + "': " + e.what());
    }
  };
  screen(spec.osc_xx, "osc_xx");
  screen(spec.osc_yy, "osc_yy");
  screen(spec.osc_zz, "osc_zz");

  return spec;
}

SeparationSpec read_separation(RawSection raw) {
  SectionReader reader("separation", std::move(raw));
  SeparationSpec spec;

  auto min_e = reader.take("min_nm");
  auto max_e = reader.take("max_nm");
  if (min_e) spec.min_nm = to_double(min_e->value, "min_nm", min_e->line_no);
  if (max_e) spec.max_nm = to_double(max_e->value, "max_nm", max_e->line_no);
  if (auto e = reader.take("points"))
    spec.points = to_int(e->value, "points", e->line_no);
  if (auto e = reader.take("spacing")) {
    if (e->value == "log") {
      spec.spacing = SeparationSpec::Spacing::log;
    } else if (e->value == "linear") {
      spec.spacing = SeparationSpec::Spacing::linear;
    } else {
      fail_line(e->line_no, "key 'spacing': expected 'log' or 'linear', got '" +
                                e->value + "'");
    }
  }
  reader.finish();

  auto fail_sep = [](const std::string& what) {
    throw ValidationError("[separation]: " + what);
  };
  if (!(spec.min_nm > 0.0)) fail_sep("key 'min_nm': must be positive");
  if (!std::isfinite(spec.max_nm) || !(spec.max_nm >= spec.min_nm))
    fail_sep("key 'max_nm': must be finite and >= min_nm");
  if (spec.points < 1) fail_sep("key 'points': needs at least 1");
  if (spec.points > 1 && !(spec.max_nm > spec.min_nm))
    fail_sep("key 'max_nm': must exceed min_nm when points > 1");
  return spec;
}

QuadratureConfig read_quadrature(RawSection raw) {
  SectionReader reader("quadrature", std::move(raw));
  QuadratureConfig cfg;
  if (auto e = reader.take("rel_tol_outer"))
    cfg.rel_tol_outer = to_double(e->value, "rel_tol_outer", e->line_no);
  if (auto e = reader.take("rel_tol_inner"))
    cfg.rel_tol_inner = to_double(e->value, "rel_tol_inner", e->line_no);
  if (auto e = reader.take("abs_floor"))
    cfg.abs_floor = to_double(e->value, "abs_floor", e->line_no);
  if (auto e = reader.take("max_depth"))
    cfg.max_depth = to_int(e->value, "max_depth", e->line_no);
  if (auto e = reader.take("rule_points"))
    cfg.rule_points = to_int(e->value, "rule_points", e->line_no);
  reader.finish();
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("[quadrature]: ") + e.what());
  }
  return cfg;
}

OutputSpec read_output(RawSection raw, RunConfig::Mode mode) {
  SectionReader reader("output", std::move(raw));
  OutputSpec spec;
  if (auto e = reader.take("csv")) spec.csv = e->value;
  if (auto e = reader.take("plot_script")) spec.plot_script = e->value;
  if (auto e = reader.take("label")) spec.label = e->value;
  reader.finish();
  if (spec.csv.empty())
    spec.csv = mode == RunConfig::Mode::ratio ? "ratio.csv" : "sweep.csv";
  return spec;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void render_film(std::ostream& out, const std::string& name,
                 const FilmSpec& spec) {
  out << "[" << name << "]\n";
  if (spec.thickness_nm)
    out << "thickness_nm = " << format_double(*spec.thickness_nm) << "\n";
  out << "orientation_rad = " << format_double(spec.orientation_rad) << "\n";
  if (spec.source == FilmSpec::Source::oscillators) {
    out << "source = oscillators\n";
    auto axis = [&](const char* suffix,
                    const std::optional<OscillatorAxisSpec>& a) {
      if (!a) return;
      out << "osc_" << suffix << " = ";
      for (std::size_t i = 0; i < a->oscillators.size(); ++i) {
        const Oscillator& o = a->oscillators[i];
        if (i) out << "; ";
        out << format_double(o.plasma_ev) << "," << format_double(o.resonance_ev)
            << "," << format_double(o.damping_ev);
      }
      out << "\n";
      out << "eps_inf_" << suffix << " = " << format_double(a->eps_inf) << "\n";
    };
    axis("xx", spec.osc_xx);
    axis("yy", spec.osc_yy);
    axis("zz", spec.osc_zz);
  } else {
    out << "source = table\n";
    out << "data_file = " << spec.data_file << "\n";
    out << "xi_min_ev = " << format_double(spec.xi_min_ev) << "\n";
    out << "xi_max_ev = " << format_double(spec.xi_max_ev) << "\n";
    out << "xi_points = " << spec.xi_points << "\n";
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RawConfig raw = tokenize(text);

  RunConfig cfg;
  if (!raw.has_mode)
    throw ValidationError("config is missing the required key 'mode'");
  if (raw.mode.value == "sweep") {
    cfg.mode = RunConfig::Mode::sweep;
  } else if (raw.mode.value == "ratio") {
    cfg.mode = RunConfig::Mode::ratio;
  } else {
    fail_line(raw.mode.line_no, "key 'mode': expected 'sweep' or 'ratio', "
                                "got '" + raw.mode.value + "'");
  }

  auto take_section = [&](const std::string& name) -> std::optional<RawSection> {
    auto it = raw.sections.find(name);
    if (it == raw.sections.end()) return std::nullopt;
    RawSection s = std::move(it->second);
    raw.sections.erase(it);
    return s;
  };

  auto film1 = take_section("film1");
  if (!film1)
    throw ValidationError("config is missing the [film1] section");
  cfg.film1 = read_film("film1", std::move(*film1));

  if (auto film2 = take_section("film2")) {
    // 'same_as = film1' keeps an explicit section equivalent to omitting it
    auto same = film2->find("same_as");
    if (same != film2->end()) {
      if (film2->size() != 1)
        fail_line(same->second.line_no,
                  "key 'same_as' cannot be mixed with other [film2] keys");
      if (same->second.value != "film1")
        fail_line(same->second.line_no,
                  "key 'same_as': only 'film1' is supported");
      cfg.film2 = std::nullopt;
    } else {
      cfg.film2 = read_film("film2", std::move(*film2));
    }
  }

  auto separation = take_section("separation");
  if (!separation)
    throw ValidationError("config is missing the [separation] section");
  cfg.separation = read_separation(std::move(*separation));

  if (auto quadrature = take_section("quadrature"))
    cfg.quadrature = read_quadrature(std::move(*quadrature));
  cfg.output = read_output(take_section("output").value_or(RawSection{}),
                           cfg.mode);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.filename().string() + ": " + e.what());
  }
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  out << "mode = "
      << (config.mode == RunConfig::Mode::ratio ? "ratio" : "sweep") << "\n\n";
  render_film(out, "film1", config.film1);
  out << "\n";
  if (config.film2) {
    render_film(out, "film2", *config.film2);
    out << "\n";
  }
  out << "[separation]\n";
  out << "min_nm = " << format_double(config.separation.min_nm) << "\n";
  out << "max_nm = " << format_double(config.separation.max_nm) << "\n";
  out << "points = " << config.separation.points << "\n";
  out << "spacing = "
      << (config.separation.spacing == SeparationSpec::Spacing::log ? "log"
                                                                    : "linear")
      << "\n\n";
  out << "[quadrature]\n";
  out << "rel_tol_outer = " << format_double(config.quadrature.rel_tol_outer)
      << "\n";
  out << "rel_tol_inner = " << format_double(config.quadrature.rel_tol_inner)
      << "\n";
  out << "abs_floor = " << format_double(config.quadrature.abs_floor) << "\n";
  out << "max_depth = " << config.quadrature.max_depth << "\n";
  out << "rule_points = " << config.quadrature.rule_points << "\n\n";
  out << "[output]\n";
  out << "csv = " << config.output.csv << "\n";
  if (!config.output.plot_script.empty())
    out << "plot_script = " << config.output.plot_script << "\n";
  if (!config.output.label.empty())
    out << "label = " << config.output.label << "\n";
  return out.str();
}

std::vector<double> build_separation_grid(const SeparationSpec& spec) {
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const int n = spec.points;
  if (n == 1) {
    grid[0] = spec.min_nm;
    return grid;
  }
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    grid[static_cast<std::size_t>(i)] =
        spec.spacing == SeparationSpec::Spacing::log
            ? spec.min_nm * std::pow(spec.max_nm / spec.min_nm, f)
            : spec.min_nm + f * (spec.max_nm - spec.min_nm);
  }
  grid.front() = spec.min_nm;
  grid.back() = spec.max_nm;
  return grid;
}

Film materialize_film(const FilmSpec& spec,
                      const std::filesystem::path& config_dir) {
  AxisModel xx = OscillatorSet({});
  AxisModel yy = xx, zz = xx;

  if (spec.source == FilmSpec::Source::oscillators) {
    xx = OscillatorSet(spec.osc_xx->oscillators, spec.osc_xx->eps_inf);
    yy = spec.osc_yy ? AxisModel(OscillatorSet(spec.osc_yy->oscillators,
                                               spec.osc_yy->eps_inf))
                     : xx;
    zz = spec.osc_zz ? AxisModel(OscillatorSet(spec.osc_zz->oscillators,
                                               spec.osc_zz->eps_inf))
                     : xx;
  } else {
    std::filesystem::path path(spec.data_file);
    if (path.is_relative()) path = config_dir / path;
    SpectrumData data = load_spectrum_csv(path);
    if (const auto* table = std::get_if<ResponseTable>(&data)) {
      xx = table->xx;
      yy = table->yy;
      zz = table->zz;
    } else {
      const auto& spectra = std::get<AbsorptionTable>(data);
      std::vector<double> grid(static_cast<std::size_t>(spec.xi_points));
      grid[0] = 0.0;
      const int m = spec.xi_points - 1;
      for (int i = 0; i < m; ++i) {
        const double f = m == 1 ? 0.0 : static_cast<double>(i) / (m - 1);
        grid[static_cast<std::size_t>(i) + 1] =
            spec.xi_min_ev * std::pow(spec.xi_max_ev / spec.xi_min_ev, f);
      }
      grid.back() = spec.xi_max_ev;
      xx = london_transform(spectra.xx, grid);
      yy = london_transform(spectra.yy, grid);
      zz = london_transform(spectra.zz, grid);
    }
  }

  return Film(DielectricTensorModel(std::move(xx), std::move(yy),
                                    std::move(zz)),
              spec.thickness_nm, spec.orientation_rad);
}

}  // namespace casfilm
