#include "casfilm/spectrum_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "casfilm/errors.hpp"

namespace casfilm {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& token, const std::string& origin,
                    std::size_t line_no) {
  const std::string t = trim(token);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ValidationError(origin + " line " + std::to_string(line_no) + ": '" +
                          t + "' is not a number");
  return value;
}

}  // namespace

SpectrumData parse_spectrum_csv(const std::string& text,
                                const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  bool header_seen = false;
  bool imaginary_axis = false;
  std::vector<double> freq;
  std::vector<double> col[3];

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;

    if (!header_seen) {
      const std::string h = strip_spaces(t);
      if (h == "xi_eV,eps_xx,eps_yy,eps_zz") {
        imaginary_axis = true;
      } else if (h == "omega_eV,eps2_xx,eps2_yy,eps2_zz") {
        imaginary_axis = false;
      } else {
        throw ValidationError(origin + " line " + std::to_string(line_no) +
                              ": unknown header '" + t +
                              "' (expected 'xi_eV,eps_xx,eps_yy,eps_zz' or "
                              "'omega_eV,eps2_xx,eps2_yy,eps2_zz')");
      }
      header_seen = true;
      continue;
    }

    const auto fields = split(t, ',');
    if (fields.size() != 4)
      throw ValidationError(origin + " line " + std::to_string(line_no) +
                            ": expected 4 comma-separated values, got " +
                            std::to_string(fields.size()));
    freq.push_back(parse_double(fields[0], origin, line_no));
    for (int a = 0; a < 3; ++a)
      col[a].push_back(parse_double(fields[a + 1], origin, line_no));
  }

  if (!header_seen) throw ValidationError(origin + ": no header line found");
  if (freq.size() < 2)
    throw ValidationError(origin + ": needs at least 2 data rows, got " +
                          std::to_string(freq.size()));

  auto axis_nodes = [&](int a) {
    std::vector<ResponseNode> nodes(freq.size());
    for (std::size_t i = 0; i < freq.size(); ++i)
      nodes[i] = ResponseNode{freq[i], col[a][i]};
    return nodes;
  };
  auto axis_samples = [&](int a) {
    std::vector<SpectrumSample> samples(freq.size());
    for (std::size_t i = 0; i < freq.size(); ++i)
      samples[i] = SpectrumSample{freq[i], col[a][i]};
    return samples;
  };

  try {
    if (imaginary_axis)
      return ResponseTable{ImaginaryAxisResponse(axis_nodes(0)),
                           ImaginaryAxisResponse(axis_nodes(1)),
                           ImaginaryAxisResponse(axis_nodes(2))};
    return AbsorptionTable{AbsorptionSpectrum(axis_samples(0)),
                           AbsorptionSpectrum(axis_samples(1)),
                           AbsorptionSpectrum(axis_samples(2))};
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

SpectrumData load_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open spectrum file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectrum_csv(buf.str(), path.filename().string());
}

}  // namespace casfilm
