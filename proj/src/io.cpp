#include "carleson/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "carleson/error.hpp"

namespace carleson {

namespace {

constexpr const char* kMeasureHeader = "# atomic-measure v1";
constexpr const char* kSetHeader = "# closed-set v1";

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + tok + "'");
  }
  return v;
}

// Reads the header, then hands each remaining non-comment line to `row`.
template <class Row>
void read_lines(std::istream& in, const char* header, Row row) {
  std::string line;
  int n = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++n;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (!seen_header) {
      if (t != header) throw ParseError("line " + std::to_string(n) + ": expected header '" + header + "'");
      seen_header = true;
      continue;
    }
    if (t[0] == '#') continue;
    std::istringstream fields(t);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    row(tok, n);
  }
  if (!seen_header) throw ParseError(std::string("missing header '") + header + "'");
}

std::ostream& precise(std::ostream& out) {
  out.precision(17);
  return out;
}

template <class Reader>
auto load(const std::string& path, Reader read) {
  if (path == "-") return read(std::cin);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read(in);
}

}  // namespace

void write_measure(std::ostream& out, const AtomicMeasure& mu) {
  precise(out) << kMeasureHeader << '\n';
  for (const auto& a : mu.atoms()) out << a.position.turns() << ' ' << a.mass << '\n';
}

AtomicMeasure read_measure(std::istream& in) {
  std::vector<Atom> atoms;
  read_lines(in, kMeasureHeader, [&](const std::vector<std::string>& tok, int n) {
    if (tok.size() != 2) throw ParseError("line " + std::to_string(n) + ": expected 'position mass'");
    const double x = parse_double(tok[0], n), m = parse_double(tok[1], n);
    if (!(x >= 0.0 && x < 1.0)) throw RangeError("line " + std::to_string(n) + ": position outside [0, 1)");
    atoms.push_back({Angle(x), m});
  });
  return AtomicMeasure(std::move(atoms));
}

void write_closed_set(std::ostream& out, const ClosedSet& E) {
  precise(out) << kSetHeader << '\n';
  for (const auto& g : E.gaps()) out << "gap " << g.left().turns() << ' ' << g.length() << '\n';
  for (const auto& r : E.residual()) out << "residual " << r.left().turns() << ' ' << r.length() << '\n';
}

ClosedSet read_closed_set(std::istream& in) {
  std::vector<Arc> gaps, residual;
  read_lines(in, kSetHeader, [&](const std::vector<std::string>& tok, int n) {
    if (tok.size() != 3 || (tok[0] != "gap" && tok[0] != "residual")) {
      throw ParseError("line " + std::to_string(n) + ": expected 'gap|residual left length'");
    }
    const double x = parse_double(tok[1], n), len = parse_double(tok[2], n);
    if (!(x >= 0.0 && x < 1.0)) throw RangeError("line " + std::to_string(n) + ": left end outside [0, 1)");
    if (!(len >= 0.0 && len <= 1.0)) throw RangeError("line " + std::to_string(n) + ": length outside [0, 1]");
    (tok[0] == "gap" ? gaps : residual).push_back(Arc(Angle(x), len));
  });
  if (gaps.empty() && residual.empty()) return ClosedSet();
  return ClosedSet(std::move(gaps), std::move(residual));
}

std::pair<std::vector<double>, std::vector<double>> read_lambda_csv(std::istream& in) {
  std::vector<double> t, lambda;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("line " + std::to_string(n) + ": expected 't,lambda'");
    const auto a = trim(s.substr(0, comma)), b = trim(s.substr(comma + 1));
    if (t.empty() && lambda.empty() && a == "t") continue;
    t.push_back(parse_double(a, n));
    lambda.push_back(parse_double(b, n));
  }
  if (t.size() < 2) throw ParseError("lambda table needs at least two rows");
  return {std::move(t), std::move(lambda)};
}

AtomicMeasure load_measure(const std::string& path) {
  return load(path, [](std::istream& in) { return read_measure(in); });
}

ClosedSet load_closed_set(const std::string& path) {
  return load(path, [](std::istream& in) { return read_closed_set(in); });
}

std::pair<std::vector<double>, std::vector<double>> load_lambda_csv(const std::string& path) {
  return load(path, [](std::istream& in) { return read_lambda_csv(in); });
}

}  // namespace carleson
