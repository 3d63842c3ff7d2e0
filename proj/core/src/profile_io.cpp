#include "diffwave/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "diffwave/artifacts.hpp"
#include "diffwave/error.hpp"

namespace diffwave {

namespace {

constexpr const char* kMagic = "diffwave-profile 1";

double parse_number(const std::map<std::string, std::string>& header, const std::string& key) {
  const auto it = header.find(key);
  if (it == header.end()) throw IoError("profile header is missing '" + key + "'");
  return parse_double(it->second, key);
}

}  // namespace

void write_profile(std::ostream& os, const DiffusionWave& wave) {
  const Profile& p = wave.profile();
  const ModelParams& m = wave.params();
  os << "# " << kMagic << '\n';
  auto kv = [&](const char* key, double v) { os << "# " << key << " = " << format_double(v) << '\n'; };
  os << "# domain = " << (p.domain == ProfileDomain::kFullLine ? "full_line" : "half_line") << '\n';
  kv("a", m.a);
  kv("b", m.b);
  kv("lambda", m.lambda);
  kv("mu", m.mu);
  kv("kappa", m.kappa);
  kv("xi_start", p.xi_grid.x0);
  kv("dxi", p.xi_grid.dx);
  kv("u_minus", m.u_minus);
  kv("u_plus", m.u_plus);
  if (p.beta) kv("beta", *p.beta);
  kv("xi0", p.anchor.xi0);
  kv("phi0", p.anchor.phi0);
  kv("slope0", p.anchor.slope0);
  kv("left_residual", p.left_residual);
  kv("right_residual", p.right_residual);
  os << "# shooting_rounds = " << p.shooting_rounds << '\n';
  if (p.envelope) {
    kv("envelope_c_amp", p.envelope->c_amp);
    kv("envelope_c0", p.envelope->c0);
    kv("envelope_r2", p.envelope->r2);
  }
  os << "# columns: xi phi dphi\n";
  for (std::size_t i = 0; i < p.phi.size(); ++i) {
    os << format_double(p.xi_grid.x(i)) << ' ' << format_double(p.phi[i]) << ' '
       << format_double(p.dphi[i]) << '\n';
  }
}

DiffusionWave read_profile(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != std::string("# ") + kMagic) {
    throw IoError("not a diffwave profile file");
  }
  std::map<std::string, std::string> header;
  std::vector<double> xi, phi, dphi;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      header[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    std::istringstream row(line);
    std::string a, b, c;
    if (!(row >> a >> b >> c)) throw IoError("malformed profile row: " + line);
    xi.push_back(parse_double(a, "xi"));
    phi.push_back(parse_double(b, "phi"));
    dphi.push_back(parse_double(c, "dphi"));
  }
  if (xi.size() < 3) throw IoError("profile file holds fewer than three samples");

  ModelParams m;
  m.a = parse_number(header, "a");
  m.b = parse_number(header, "b");
  m.lambda = parse_number(header, "lambda");
  m.mu = parse_number(header, "mu");
  m.kappa = parse_number(header, "kappa");
  m.u_minus = parse_number(header, "u_minus");
  m.u_plus = parse_number(header, "u_plus");

  Profile p;
  const auto dom = header.find("domain");
  if (dom == header.end()) throw IoError("profile header is missing 'domain'");
  if (dom->second == "full_line") {
    p.domain = ProfileDomain::kFullLine;
  } else if (dom->second == "half_line") {
    p.domain = ProfileDomain::kHalfLine;
  } else {
    throw IoError("unknown profile domain '" + dom->second + "'");
  }
  const double dxi = parse_number(header, "dxi");
  const double xi_start = parse_number(header, "xi_start");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double expected = xi_start + static_cast<double>(i) * dxi;
    if (std::abs(xi[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw IoError("profile xi samples are not uniform");
    }
  }
  p.xi_grid = Grid{xi_start, dxi, xi.size()};
  p.phi = std::move(phi);
  p.dphi = std::move(dphi);
  p.u_minus = m.u_minus;
  p.u_plus = m.u_plus;
  if (header.count("beta")) p.beta = parse_number(header, "beta");
  p.anchor = {parse_number(header, "xi0"), parse_number(header, "phi0"),
              parse_number(header, "slope0")};
  p.left_residual = parse_number(header, "left_residual");
  p.right_residual = parse_number(header, "right_residual");
  if (header.count("shooting_rounds")) {
    p.shooting_rounds = static_cast<int>(parse_number(header, "shooting_rounds"));
  }
  if (header.count("envelope_c0")) {
    p.envelope = Envelope{parse_number(header, "envelope_c_amp"),
                          parse_number(header, "envelope_c0"),
                          parse_number(header, "envelope_r2")};
  }
  return DiffusionWave(std::move(p), m);
}

void save_profile(const std::filesystem::path& path, const DiffusionWave& wave) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  write_profile(os, wave);
  if (!os) throw IoError("failed writing " + path.string());
}

DiffusionWave load_profile(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open profile file " + path.string());
  return read_profile(is);
}

}  // namespace diffwave
