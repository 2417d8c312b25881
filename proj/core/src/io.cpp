#include "qgen/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qgen {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

mpq_class parse_rational(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw InvalidInputError("form spec: empty coefficient");
  try {
    mpq_class q(t);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInputError("form spec: bad coefficient '" + t + "'");
  }
}

std::int64_t parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(trim(text), &used);
    if (used != trim(text).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidInputError(std::string("point file: bad ") + what + " '" + text + "'");
  }
}

ordered_json certificate_json(const Certificate& c) {
  ordered_json j;
  j["status"] = to_string(c.status);
  if (c.max_hyperplane_incidence) {
    j["max_hyperplane_incidence"] = *c.max_hyperplane_incidence;
  } else {
    j["max_hyperplane_incidence"] = nullptr;
  }
  if (c.max_quadric_incidence) {
    j["max_quadric_incidence"] = *c.max_quadric_incidence;
  } else {
    j["max_quadric_incidence"] = nullptr;
  }
  j["hyperplane_subsets_tested"] = c.hyperplane_subsets_tested;
  j["quadric_subsets_tested"] = c.quadric_subsets_tested;
  if (!c.violating_subset.empty()) {
    j["violating_subset"] = c.violating_subset;
    j["witness_determinant"] = c.witness_determinant;
  }
  return j;
}

Certificate certificate_from_json(const ordered_json& j) {
  Certificate c;
  std::string st = j.at("status").get<std::string>();
  if (st == "pass") {
    c.status = Certificate::Status::pass;
  } else if (st == "hyperplane_violation") {
    c.status = Certificate::Status::hyperplane_violation;
  } else if (st == "quadric_violation") {
    c.status = Certificate::Status::quadric_violation;
  } else {
    throw InvalidInputError("point file: unknown certificate status '" + st + "'");
  }
  if (j.contains("max_hyperplane_incidence") && !j["max_hyperplane_incidence"].is_null()) {
    c.max_hyperplane_incidence = j["max_hyperplane_incidence"].get<int>();
  }
  if (j.contains("max_quadric_incidence") && !j["max_quadric_incidence"].is_null()) {
    c.max_quadric_incidence = j["max_quadric_incidence"].get<int>();
  }
  if (j.contains("hyperplane_subsets_tested")) {
    c.hyperplane_subsets_tested = j["hyperplane_subsets_tested"].get<std::uint64_t>();
  }
  if (j.contains("quadric_subsets_tested")) {
    c.quadric_subsets_tested = j["quadric_subsets_tested"].get<std::uint64_t>();
  }
  if (j.contains("violating_subset")) {
    c.violating_subset = j["violating_subset"].get<std::vector<std::size_t>>();
    c.witness_determinant = j.value("witness_determinant", "0");
  }
  return c;
}

}  // namespace

RationalForm parse_form_spec(const std::string& spec, int dim) {
  std::string s = trim(spec);
  if (s.empty()) throw InvalidInputError("form spec: empty");
  if (s == "sphere") return RationalForm::sphere(dim);
  std::vector<RatTerm> terms;
  for (const std::string& part : split(s, ';')) {
    std::string t = trim(part);
    if (t.empty()) continue;
    std::vector<std::string> f = split(t, ',');
    if (f.size() != 3) {
      throw InvalidInputError("form spec: expected 'i,j,c' but got '" + t + "'");
    }
    long i = std::strtol(trim(f[0]).c_str(), nullptr, 10);
    long j = std::strtol(trim(f[1]).c_str(), nullptr, 10);
    if (i < 1 || j < i || j > dim) {
      throw InvalidInputError("form spec: indices out of range in '" + t + "' (need 1 <= i <= j <= " +
                              std::to_string(dim) + ")");
    }
    terms.push_back(RatTerm{static_cast<int>(i - 1), static_cast<int>(j - 1), parse_rational(f[2])});
  }
  return RationalForm::from_terms(dim, terms);
}

std::string form_spec_string(const RationalForm& q) {
  std::string out;
  for (int i = 0; i < q.dim(); ++i) {
    for (int j = i; j < q.dim(); ++j) {
      const mpq_class& c = q.coeff(i, j);
      if (c == 0) continue;
      if (!out.empty()) out += ";";
      out += std::to_string(i + 1) + "," + std::to_string(j + 1) + ",";
      out += c.get_str();
    }
  }
  return out;
}

PointSetFile point_set_file(const GridConstruction& g, std::uint64_t seed,
                            const Certificate& cert) {
  PointSetFile f;
  f.mode = "grid";
  f.dim = g.dim;
  f.n = g.n;
  f.prime = g.p.value();
  f.seed = seed;
  f.form = g.form;
  f.points = g.points;
  f.certificate = cert;
  return f;
}

PointSetFile point_set_file(const Construction& c, const RationalForm& form, std::uint64_t seed,
                            const Certificate& cert) {
  PointSetFile f;
  f.mode = "field";
  f.dim = c.dim;
  f.prime = c.p.value();
  f.seed = seed;
  f.form = form;
  for (const auto& x : c.points) {
    std::vector<std::int64_t> row(x.begin(), x.end());
    f.points.push_back(std::move(row));
  }
  f.certificate = cert;
  return f;
}

void write_json(std::ostream& os, const PointSetFile& f) {
  ordered_json j;
  j["tool"] = "qgen";
  j["version"] = f.version;
  j["mode"] = f.mode;
  j["dim"] = f.dim;
  if (f.n) {
    j["n"] = *f.n;
  } else {
    j["n"] = nullptr;
  }
  j["prime"] = f.prime;
  j["seed"] = f.seed;
  ordered_json form = ordered_json::array();
  if (f.form) {
    for (int i = 0; i < f.form->dim(); ++i) {
      for (int jj = i; jj < f.form->dim(); ++jj) {
        const mpq_class& c = f.form->coeff(i, jj);
        if (c == 0) continue;
        form.push_back({i + 1, jj + 1, c.get_num().get_str(), c.get_den().get_str()});
      }
    }
  }
  j["form"] = form;
  ordered_json pts = ordered_json::array();
  for (const auto& x : f.points) pts.push_back(x);
  j["points"] = pts;
  if (f.certificate) j["certificate"] = certificate_json(*f.certificate);
  os << j.dump(2) << "\n";
}

std::string to_json_string(const PointSetFile& f) {
  std::ostringstream os;
  write_json(os, f);
  return os.str();
}

void write_csv(std::ostream& os, const PointSetFile& f) {
  os << "# tool: qgen " << f.version << "\n";
  os << "# mode: " << f.mode << "\n";
  os << "# dim: " << f.dim << "\n";
  if (f.n) os << "# n: " << *f.n << "\n";
  os << "# prime: " << f.prime << "\n";
  os << "# seed: " << f.seed << "\n";
  if (f.form) os << "# form: " << form_spec_string(*f.form) << "\n";
  if (f.certificate) {
    os << "# status: " << to_string(f.certificate->status) << "\n";
    if (f.certificate->max_hyperplane_incidence) {
      os << "# max_hyperplane_incidence: " << *f.certificate->max_hyperplane_incidence << "\n";
    }
    if (f.certificate->max_quadric_incidence) {
      os << "# max_quadric_incidence: " << *f.certificate->max_quadric_incidence << "\n";
    }
  }
  os << "# points: " << f.points.size() << "\n";
  for (const auto& x : f.points) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) os << ",";
      os << x[i];
    }
    os << "\n";
  }
}

namespace {

PointSetFile read_json_file(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInputError(std::string("point file: JSON parse error: ") + e.what());
  }
  PointSetFile f;
  f.mode = j.value("mode", "grid");
  if (!j.contains("dim")) throw InvalidInputError("point file: missing 'dim'");
  f.dim = j["dim"].get<int>();
  if (j.contains("n") && !j["n"].is_null()) f.n = j["n"].get<std::uint64_t>();
  if (j.contains("prime") && !j["prime"].is_null()) f.prime = j["prime"].get<std::uint64_t>();
  if (j.contains("seed")) f.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("version")) f.version = j["version"].get<std::string>();
  if (j.contains("form") && j["form"].is_array() && !j["form"].empty()) {
    std::vector<RatTerm> terms;
    for (const auto& t : j["form"]) {
      if (!t.is_array() || t.size() != 4) {
        throw InvalidInputError("point file: form entries must be [i, j, num, den]");
      }
      mpz_class num(t[2].is_string() ? t[2].get<std::string>() : t[2].dump());
      mpz_class den(t[3].is_string() ? t[3].get<std::string>() : t[3].dump());
      mpq_class c(num, den);
      c.canonicalize();
      terms.push_back(RatTerm{t[0].get<int>() - 1, t[1].get<int>() - 1, c});
    }
    f.form = RationalForm::from_terms(f.dim, terms);
  }
  if (j.contains("points")) {
    for (const auto& row : j["points"]) {
      std::vector<std::int64_t> x = row.get<std::vector<std::int64_t>>();
      if (static_cast<int>(x.size()) != f.dim) {
        throw InvalidInputError("point file: point width does not match dim");
      }
      f.points.push_back(std::move(x));
    }
  }
  if (j.contains("certificate") && !j["certificate"].is_null()) {
    f.certificate = certificate_from_json(j["certificate"]);
  }
  return f;
}

PointSetFile read_csv_file(const std::string& text) {
  PointSetFile f;
  f.mode.clear();
  std::optional<std::size_t> declared;
  std::string form_spec;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      std::size_t colon = body.find(':');
      if (colon == std::string::npos) continue;
      std::string key = trim(body.substr(0, colon));
      std::string val = trim(body.substr(colon + 1));
      if (key == "mode") {
        f.mode = val;
      } else if (key == "dim") {
        f.dim = static_cast<int>(parse_int(val, "dim"));
      } else if (key == "n") {
        f.n = static_cast<std::uint64_t>(parse_int(val, "n"));
      } else if (key == "prime") {
        f.prime = static_cast<std::uint64_t>(parse_int(val, "prime"));
      } else if (key == "seed") {
        f.seed = static_cast<std::uint64_t>(parse_int(val, "seed"));
      } else if (key == "points") {
        declared = static_cast<std::size_t>(parse_int(val, "points count"));
      } else if (key == "form") {
        form_spec = val;
      }
      continue;
    }
    std::vector<std::int64_t> row;
    for (const std::string& cell : split(t, ',')) row.push_back(parse_int(cell, "coordinate"));
    if (f.dim == 0) f.dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != f.dim) {
      throw InvalidInputError("point file: inconsistent row width");
    }
    f.points.push_back(std::move(row));
  }
  if (f.mode.empty()) f.mode = "grid";
  if (declared && *declared != f.points.size()) {
    throw InvalidInputError("point file: header declares " + std::to_string(*declared) +
                            " points but " + std::to_string(f.points.size()) + " rows present");
  }
  if (!form_spec.empty()) f.form = parse_form_spec(form_spec, f.dim);
  return f;
}

}  // namespace

PointSetFile read_point_file(std::istream& is) {
  std::stringstream buf;
  buf << is.rdbuf();
  std::string text = buf.str();
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidInputError("point file: empty input");
  PointSetFile f = text[first] == '{' ? read_json_file(text) : read_csv_file(text);
  if (f.dim < 1) throw InvalidInputError("point file: bad dimension");
  return f;
}

PointSetFile read_point_file_from_path(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInputError("cannot open '" + path + "'");
  return read_point_file(is);
}

}  // namespace qgen
