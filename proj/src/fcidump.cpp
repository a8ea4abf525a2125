#include "compact/fcidump.hpp"

#include "compact/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace compact {

namespace {

std::size_t pair_index(std::size_t i, std::size_t j) noexcept {
  if (i < j) std::swap(i, j);
  return i * (i + 1) / 2 + j;
}

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool parse_int(const std::string& tok, long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Fortran writers emit both 1.0E-08 and 1.0D-08.
bool parse_real(std::string tok, double& out) {
  for (auto& c : tok) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return !tok.empty() && end == tok.c_str() + tok.size();
}

struct HeaderToken {
  std::string text;
  std::size_t line;
};

struct Header {
  std::map<std::string, std::vector<HeaderToken>> values;
  std::size_t end_line = 0;
};

Header read_header(std::istream& in, std::size_t& line_no) {
  Header header;
  std::string line;
  std::string current_key;
  bool started = false;
  bool terminated = false;
  while (!terminated && std::getline(in, line)) {
    ++line_no;
    std::string body = line;
    // Strip the namelist opener and the terminator, keeping whatever sits between.
    std::string up = upper(body);
    if (!started) {
      const auto amp = up.find_first_not_of(" \t\r");
      if (amp == std::string::npos) continue;
      if (up[amp] != '&' && up[amp] != '$') {
        throw ParseError(line_no, "expected namelist header starting with &FCI");
      }
      std::size_t name_end = amp + 1;
      while (name_end < up.size() && std::isalpha(static_cast<unsigned char>(up[name_end]))) ++name_end;
      if (up.substr(amp + 1, name_end - amp - 1) != "FCI") {
        throw ParseError(line_no, "expected namelist group FCI");
      }
      body = body.substr(name_end);
      up = up.substr(name_end);
      started = true;
    }
    if (auto pos = up.find("&END"); pos != std::string::npos) {
      body = body.substr(0, pos);
      terminated = true;
    } else if (auto pos = up.find("$END"); pos != std::string::npos) {
      body = body.substr(0, pos);
      terminated = true;
    } else if (auto pos = body.find('/'); pos != std::string::npos) {
      body = body.substr(0, pos);
      terminated = true;
    }
    std::replace(body.begin(), body.end(), ',', ' ');
    for (const auto& tok : split_ws(body)) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) {
        current_key = upper(tok.substr(0, eq));
        if (current_key.empty()) throw ParseError(line_no, "empty key in namelist header");
        header.values[current_key];
        if (eq + 1 < tok.size()) header.values[current_key].push_back({tok.substr(eq + 1), line_no});
      } else {
        if (current_key.empty()) throw ParseError(line_no, "value '" + tok + "' without a key");
        header.values[current_key].push_back({tok, line_no});
      }
    }
  }
  if (!started) throw ParseError(line_no, "missing namelist header");
  if (!terminated) throw ParseError(line_no, "namelist header not terminated by &END or /");
  header.end_line = line_no;
  return header;
}

long header_int(const Header& h, const std::string& key, std::optional<long> fallback) {
  const auto it = h.values.find(key);
  if (it == h.values.end()) {
    if (fallback) return *fallback;
    throw ParseError(h.end_line, "namelist header lacks " + key);
  }
  if (it->second.size() != 1) {
    const auto line = it->second.empty() ? h.end_line : it->second.front().line;
    throw ParseError(line, key + " expects exactly one value");
  }
  long value = 0;
  if (!parse_int(it->second.front().text, value)) {
    throw ParseError(it->second.front().line, key + " is not an integer: " + it->second.front().text);
  }
  return value;
}

void store_checked(double& slot, bool& seen, double value, const std::string& what, std::size_t line) {
  if (seen && std::abs(slot - value) > kDuplicateTolerance) {
    throw ConsistencyError("line " + std::to_string(line) + ": conflicting duplicate entry for " + what);
  }
  slot = value;
  seen = true;
}

}  // namespace

ChemistEri::ChemistEri(std::size_t n_orbitals) : n_(n_orbitals) {
  const std::size_t npair = n_ * (n_ + 1) / 2;
  values_.assign(npair * (npair + 1) / 2, 0.0);
}

std::size_t ChemistEri::canonical_index(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept {
  return pair_index(pair_index(i, j), pair_index(k, l));
}

FcidumpData parse_fcidump(std::istream& in) {
  std::size_t line_no = 0;
  const Header header = read_header(in, line_no);

  FcidumpData data;
  const long norb = header_int(header, "NORB", std::nullopt);
  const long nelec = header_int(header, "NELEC", std::nullopt);
  if (norb <= 0) throw ParseError(header.end_line, "NORB must be positive");
  if (nelec < 0) throw ParseError(header.end_line, "NELEC must be non-negative");
  data.n_orbitals = static_cast<std::size_t>(norb);
  data.n_electrons = static_cast<std::size_t>(nelec);
  data.ms2 = static_cast<int>(header_int(header, "MS2", 0));
  if (auto it = header.values.find("ORBSYM"); it != header.values.end()) {
    for (const auto& tok : it->second) {
      long s = 0;
      if (!parse_int(tok.text, s)) throw ParseError(tok.line, "ORBSYM entry is not an integer: " + tok.text);
      data.orbital_symmetries.push_back(static_cast<int>(s));
    }
    if (data.orbital_symmetries.size() != data.n_orbitals) {
      throw ParseError(header.end_line, "ORBSYM length differs from NORB");
    }
  } else {
    data.orbital_symmetries.assign(data.n_orbitals, 1);
  }

  const std::size_t n = data.n_orbitals;
  data.one_body = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  data.two_body = ChemistEri(n);
  data.orbital_energies.assign(n, std::nullopt);

  std::vector<bool> seen_two(data.two_body.packed_size(), false);
  std::vector<bool> seen_one(n * (n + 1) / 2, false);
  std::vector<bool> seen_eps(n, false);
  bool seen_core = false;
  std::vector<double> eps_values(n, 0.0);

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 5) throw ParseError(line_no, "expected 'value i j k l'");
    double value = 0.0;
    if (!parse_real(tokens[0], value)) throw ParseError(line_no, "bad integral value '" + tokens[0] + "'");
    long idx[4];
    for (int t = 0; t < 4; ++t) {
      if (!parse_int(tokens[t + 1], idx[t])) throw ParseError(line_no, "bad index '" + tokens[t + 1] + "'");
      if (idx[t] < 0 || idx[t] > norb) {
        throw IndexError("line " + std::to_string(line_no) + ": index " + std::to_string(idx[t]) +
                         " outside [1, " + std::to_string(norb) + "]");
      }
    }
    const auto [i, j, k, l] = std::array<long, 4>{idx[0], idx[1], idx[2], idx[3]};
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      store_checked(data.core_energy, seen_core, value, "core energy", line_no);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const auto p = static_cast<std::size_t>(i - 1), q = static_cast<std::size_t>(j - 1);
      double slot = data.one_body(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      bool seen = seen_one[pair_index(p, q)];
      store_checked(slot, seen, value, "h(" + std::to_string(i) + "," + std::to_string(j) + ")", line_no);
      seen_one[pair_index(p, q)] = true;
      data.one_body(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = slot;
      data.one_body(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = slot;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      const auto p = static_cast<std::size_t>(i - 1);
      bool seen = seen_eps[p];
      store_checked(eps_values[p], seen, value, "orbital energy " + std::to_string(i), line_no);
      seen_eps[p] = true;
      data.orbital_energies[p] = eps_values[p];
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1),
                 c = static_cast<std::size_t>(k - 1), d = static_cast<std::size_t>(l - 1);
      const std::size_t pos = data.two_body.canonical_index(a, b, c, d);
      double slot = data.two_body(a, b, c, d);
      bool seen = seen_two[pos];
      store_checked(slot, seen, value,
                    "(" + std::to_string(i) + std::to_string(j) + "|" + std::to_string(k) + std::to_string(l) + ")",
                    line_no);
      seen_two[pos] = true;
      data.two_body.set(a, b, c, d, slot);
    } else {
      throw ParseError(line_no, "unrecognised index pattern");
    }
  }
  return data;
}

FcidumpData parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

FcidumpData read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open FCIDUMP file " + path.string());
  return parse_fcidump(in);
}

std::string write_fcidump(const FcidumpData& data) {
  std::ostringstream out;
  out << "&FCI NORB=" << data.n_orbitals << ",NELEC=" << data.n_electrons << ",MS2=" << data.ms2 << ",\n ORBSYM=";
  for (std::size_t p = 0; p < data.n_orbitals; ++p) {
    out << (p < data.orbital_symmetries.size() ? data.orbital_symmetries[p] : 1) << ",";
  }
  out << "\n ISYM=1,\n&END\n";
  char buf[96];
  const std::size_t n = data.n_orbitals;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l <= k; ++l) {
          if (pair_index(k, l) > pair_index(i, j)) continue;
          const double v = data.two_body(i, j, k, l);
          if (std::abs(v) <= 1e-15) continue;
          std::snprintf(buf, sizeof buf, "%.17g %zu %zu %zu %zu\n", v, i + 1, j + 1, k + 1, l + 1);
          out << buf;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = data.one_body(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::abs(v) <= 1e-15) continue;
      std::snprintf(buf, sizeof buf, "%.17g %zu %zu 0 0\n", v, i + 1, j + 1);
      out << buf;
    }
  }
  for (std::size_t i = 0; i < data.orbital_energies.size(); ++i) {
    if (!data.orbital_energies[i]) continue;
    std::snprintf(buf, sizeof buf, "%.17g %zu 0 0 0\n", *data.orbital_energies[i], i + 1);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g 0 0 0 0\n", data.core_energy);
  out << buf;
  return out.str();
}

IntegralSystem to_spin_orbitals(const FcidumpData& data, std::size_t n_frozen_spatial) {
  if (n_frozen_spatial > 0) {
    throw UnsupportedSystemError("frozen orbitals must be folded into the FCIDUMP by the integral generator");
  }
  if (data.n_electrons % 2 != 0) {
    throw UnsupportedSystemError("odd electron count " + std::to_string(data.n_electrons) +
                                 "; only closed-shell references are supported");
  }
  if (data.ms2 != 0) throw UnsupportedSystemError("MS2 must be 0 for a closed-shell reference");
  if (data.n_electrons > 2 * data.n_orbitals) throw UnsupportedSystemError("more electrons than spin orbitals");

  const std::size_t n = data.n_orbitals;
  const std::size_t ns = 2 * n;
  IntegralSystem sys;
  sys.n_spin_ = ns;
  sys.n_electrons_ = data.n_electrons;
  sys.core_energy_ = data.core_energy;

  auto spatial = [n](std::size_t p) { return p % n; };
  auto spin = [n](std::size_t p) { return p / n; };

  sys.h1_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(ns));
  for (std::size_t p = 0; p < ns; ++p) {
    for (std::size_t q = 0; q < ns; ++q) {
      if (spin(p) == spin(q)) {
        sys.h1_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
            data.one_body(static_cast<Eigen::Index>(spatial(p)), static_cast<Eigen::Index>(spatial(q)));
      }
    }
  }

  // <pq|rs> = (pr|qs) delta(sp,sr) delta(sq,ss); <pq||rs> = <pq|rs> - <pq|sr>.
  sys.v_.assign(ns * ns * ns * ns, 0.0);
  for (std::size_t p = 0; p < ns; ++p) {
    for (std::size_t q = 0; q < ns; ++q) {
      for (std::size_t r = 0; r < ns; ++r) {
        for (std::size_t s = 0; s < ns; ++s) {
          double value = 0.0;
          if (spin(p) == spin(r) && spin(q) == spin(s)) {
            value += data.two_body(spatial(p), spatial(r), spatial(q), spatial(s));
          }
          if (spin(p) == spin(s) && spin(q) == spin(r)) {
            value -= data.two_body(spatial(p), spatial(s), spatial(q), spatial(r));
          }
          sys.v_[((p * ns + q) * ns + r) * ns + s] = value;
        }
      }
    }
  }

  const std::size_t n_occ_spatial = data.n_electrons / 2;
  sys.occupied_mask_.assign(ns, false);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t k = 0; k < n_occ_spatial; ++k) {
      sys.occupied_.push_back(static_cast<int>(s * n + k));
      sys.occupied_mask_[s * n + k] = true;
    }
  }
  for (std::size_t p = 0; p < ns; ++p) {
    if (!sys.occupied_mask_[p]) sys.virtual_.push_back(static_cast<int>(p));
  }

  sys.orbital_energy_.assign(ns, 0.0);
  for (std::size_t p = 0; p < ns; ++p) {
    double f = sys.h1_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (int i : sys.occupied_) f += sys.v(static_cast<int>(p), i, static_cast<int>(p), i);
    sys.orbital_energy_[p] = f;
  }
  for (std::size_t k = 0; k < n && k < data.orbital_energies.size(); ++k) {
    if (!data.orbital_energies[k]) continue;
    const double diff = std::abs(*data.orbital_energies[k] - sys.orbital_energy_[k]);
    if (diff > 1e-6) {
      sys.warnings_.push_back("orbital energy of orbital " + std::to_string(k + 1) + " in file differs from Fock diagonal by " +
                              std::to_string(diff) + " Eh");
    }
  }

  double from_eps = sys.core_energy_;
  for (int i : sys.occupied_) from_eps += 0.5 * (sys.h1(i, i) + sys.orbital_energy_[static_cast<std::size_t>(i)]);
  if (std::abs(from_eps - sys.hf_energy()) > 1e-8) {
    throw ConsistencyError("Hartree-Fock energy from integrals and from orbital energies disagree");
  }
  return sys;
}

double IntegralSystem::hf_energy() const {
  double e = core_energy_;
  for (int i : occupied_) {
    e += h1_(i, i);
    for (int j : occupied_) e += 0.5 * v(i, j, i, j);
  }
  return e;
}

double mp_denominator(const IntegralSystem& sys, std::span<const int> holes, std::span<const int> particles) {
  auto check = [&](std::span<const int> list, const char* what) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      if (list[a] < 0 || static_cast<std::size_t>(list[a]) >= sys.n_spin_orbitals()) {
        throw IndexError(std::string(what) + " index " + std::to_string(list[a]) + " out of range");
      }
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (list[a] == list[b]) {
          throw InvalidExcitationError(std::string("repeated ") + what + " index " + std::to_string(list[a]));
        }
      }
    }
  };
  check(holes, "hole");
  check(particles, "particle");
  double d = 0.0;
  for (int h : holes) d += sys.orbital_energy(h);
  for (int p : particles) d -= sys.orbital_energy(p);
  return d;
}

}  // namespace compact
