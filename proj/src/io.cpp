#include "dipstr/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dipstr {

namespace {

void trim(std::string& s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
}

}  // namespace

AlleleDatabase parse_database(std::istream& in, const std::string& source) {
  AlleleDatabase db;
  db.source = source;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    trim(line);
    if (line.empty()) continue;
    try {
      db.entries.push_back(parse_allele(line));
    } catch (const ParseError& e) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  return db;
}

AlleleDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open database file " + path.string());
  return parse_database(in, path.string());
}

std::string format_database(const AlleleDatabase& db) {
  std::string out;
  for (const auto& a : db.entries) {
    out += to_label(a);
    out += '\n';
  }
  return out;
}

namespace {

using nlohmann::json;

CaseInput parse_one_case(const json& j, const std::string& source) {
  if (!j.is_object())
    throw ParseError(source + ": each case entry must be a JSON object");
  CaseInput c;
  c.locus = j.at("locus").get<std::string>();
  const auto genotype_of = [&](const char* key) {
    const json& arr = j.at(key);
    if (!arr.is_array() || arr.size() != 2)
      throw ParseError(source + ": \"" + key +
                       "\" must list exactly two allele labels");
    return Genotype::of(parse_allele(arr[0].get<std::string>()),
                        parse_allele(arr[1].get<std::string>()));
  };
  c.victim = genotype_of("victim");
  c.suspect = genotype_of("suspect");
  const json& obs = j.at("observed");
  if (!obs.is_array())
    throw ParseError(source + ": \"observed\" must be an array of labels");
  std::vector<DipStrAllele> alleles;
  for (const json& el : obs)
    alleles.push_back(parse_allele(el.get<std::string>()));
  c.observation = Observation::from_alleles(std::move(alleles));
  validate_case(c);
  return c;
}

}  // namespace

std::vector<CaseInput> parse_cases(const std::string& text,
                                   const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  std::vector<CaseInput> cases;
  try {
    if (doc.is_array()) {
      for (const json& el : doc) cases.push_back(parse_one_case(el, source));
    } else {
      cases.push_back(parse_one_case(doc, source));
    }
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (cases.empty()) throw ParseError(source + ": empty case list");
  return cases;
}

std::vector<CaseInput> load_cases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open case file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cases(buf.str(), path.string());
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " \"" + text + "\"");
  }
  if (used != text.size())
    throw ParseError("bad " + what + " \"" + text + "\"");
  return out;
}

long parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad " + what + " \"" + text + "\"");
  }
  if (used != text.size())
    throw ParseError("bad " + what + " \"" + text + "\"");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

KPrior parse_k_prior(const std::string& spec) {
  const std::string usage =
      " (expected uniform | poisson:<lambda> | negbin:<r>,<p> | fixed:<k0>)";
  if (spec == "uniform") return KPrior::uniform();
  if (spec.starts_with("poisson:")) {
    const double lambda = parse_number(spec.substr(8), "poisson rate");
    if (!(lambda > 0.0))
      throw ParseError("poisson k prior needs lambda > 0, got \"" + spec +
                       "\"");
    return KPrior::poisson(lambda);
  }
  if (spec.starts_with("negbin:")) {
    const auto parts = split(spec.substr(7), ',');
    if (parts.size() != 2)
      throw ParseError("bad k prior \"" + spec + "\"" + usage);
    const double r = parse_number(parts[0], "negbin r");
    const double p = parse_number(parts[1], "negbin p");
    if (!(r > 0.0) || !(p > 0.0 && p < 1.0))
      throw ParseError("negbin k prior needs r > 0 and p in (0,1), got \"" +
                       spec + "\"");
    return KPrior::neg_binomial(r, p);
  }
  if (spec.starts_with("fixed:")) {
    const long k0 = parse_count(spec.substr(6), "fixed k");
    if (k0 < 1)
      throw ParseError("fixed k prior needs k0 >= 1, got \"" + spec + "\"");
    return KPrior::degenerate(k0);
  }
  throw ParseError("bad k prior \"" + spec + "\"" + usage);
}

std::vector<double> parse_alpha_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3)
    throw ParseError("bad alpha grid \"" + spec +
                     "\" (expected start:stop:step)");
  const double start = parse_number(parts[0], "alpha grid start");
  const double stop = parse_number(parts[1], "alpha grid stop");
  const double step = parse_number(parts[2], "alpha grid step");
  if (!(start > 0.0) || !(step > 0.0) || stop < start)
    throw ParseError("bad alpha grid \"" + spec +
                     "\": need 0 < start <= stop and step > 0");
  const long count = long((stop - start) / step + 1e-9) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (long i = 0; i < count; ++i) {
    // snap accumulated points back to the decimals the user wrote
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + double(i) * step);
    grid.push_back(std::stod(buf));
  }
  return grid;
}

std::vector<long> parse_m_grid(const std::string& spec) {
  std::vector<long> grid;
  for (const auto& part : split(spec, ',')) {
    const long m = parse_count(part, "m grid value");
    if (m < 1) throw ParseError("m grid values must be >= 1, got " + part);
    grid.push_back(m);
  }
  if (grid.empty()) throw ParseError("empty m grid");
  return grid;
}

std::vector<Method> parse_methods(const std::string& spec) {
  std::set<Method> chosen;
  for (const auto& part : split(spec, ',')) {
    if (part == "full")
      chosen.insert(Method::FullBayes);
    else if (part == "plugin")
      chosen.insert(Method::ClassicalPlugin);
    else if (part == "gt")
      chosen.insert(Method::GoodTuringEmpirical);
    else
      throw ParseError("unknown method \"" + part +
                       "\" (expected full, plugin, or gt)");
  }
  return {chosen.begin(), chosen.end()};
}

std::string fmt_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_param(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "method,alpha,m,k_prior,log10_lr,status\n";
  for (const auto& r : rows) {
    out << method_label(r.method) << ',' << fmt_param(r.alpha) << ',' << r.m
        << ',' << csv_field(r.k_prior) << ',' << fmt_full(r.log10_lr) << ','
        << csv_field(r.status) << '\n';
  }
}

}  // namespace dipstr
