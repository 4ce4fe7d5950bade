#include "mixnorm/report.hpp"

#include "mixnorm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mixnorm {

namespace {

using nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Non-finite doubles have no JSON literal; they travel as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from(const ordered_json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

bool same_double(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

template <class Map>
bool same_scalar_map(const Map& a, const Map& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !same_double(ia->second, ib->second)) return false;
  return true;
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second == "FAIL"; });
}

bool ExperimentReport::same_as(const ExperimentReport& o, bool ignore_runtime) const {
  if (experiment_id != o.experiment_id || params != o.params || verdicts != o.verdicts || seed != o.seed) return false;
  if (!ignore_runtime && runtime_ms != o.runtime_ms) return false;
  if (!same_scalar_map(scalars, o.scalars) || !same_scalar_map(tolerances, o.tolerances)) return false;
  if (curves.size() != o.curves.size()) return false;
  for (auto ia = curves.begin(), ib = o.curves.begin(); ia != curves.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
    for (std::size_t i = 0; i < ia->second.size(); ++i)
      if (!same_double(ia->second[i].first, ib->second[i].first) ||
          !same_double(ia->second[i].second, ib->second[i].second))
        return false;
  }
  return true;
}

Format parse_format(const std::string& s) {
  const auto l = lower(s);
  if (l == "csv") return Format::CSV;
  if (l == "json") return Format::JSON;
  throw UsageError("unknown format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  const auto t = lower(trim(s));
  if (t == "inf" || t == "+inf" || t == "infinity") return INFINITY;
  if (t == "-inf" || t == "-infinity") return -INFINITY;
  if (t == "nan") return NAN;
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::string to_json_string(const ExperimentReport& r) {
  ordered_json j;
  j["experiment_id"] = r.experiment_id;
  j["seed"] = r.seed;
  j["params"] = r.params;
  ordered_json tol = ordered_json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = number(v);
  j["tolerances"] = tol;
  ordered_json sc = ordered_json::object();
  for (const auto& [k, v] : r.scalars) sc[k] = number(v);
  j["scalars"] = sc;
  j["verdicts"] = r.verdicts;
  ordered_json cv = ordered_json::object();
  for (const auto& [name, pts] : r.curves) {
    ordered_json arr = ordered_json::array();
    for (const auto& [x, y] : pts) arr.push_back(ordered_json::array({number(x), number(y)}));
    cv[name] = arr;
  }
  j["curves"] = cv;
  j["runtime_ms"] = r.runtime_ms;
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("report JSON: ") + e.what());
  }
  ExperimentReport r;
  r.experiment_id = j.at("experiment_id").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.params = j.at("params").get<std::map<std::string, std::string>>();
  for (const auto& [k, v] : j.at("tolerances").items()) r.tolerances[k] = number_from(v);
  for (const auto& [k, v] : j.at("scalars").items()) r.scalars[k] = number_from(v);
  r.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
  for (const auto& [name, arr] : j.at("curves").items()) {
    Curve c;
    for (const auto& pt : arr) c.emplace_back(number_from(pt.at(0)), number_from(pt.at(1)));
    r.curves[name] = std::move(c);
  }
  r.runtime_ms = j.value("runtime_ms", std::int64_t{0});
  return r;
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "experiment_id,series,x,y\n";
  for (const auto& [name, pts] : r.curves)
    for (const auto& [x, y] : pts)
      os << r.experiment_id << ',' << name << ',' << format_double(x) << ',' << format_double(y) << '\n';
  return os.str();
}

std::string summary_block(const ExperimentReport& r) {
  std::ostringstream os;
  os << "experiment_id = " << r.experiment_id << '\n';
  os << "seed = " << r.seed << '\n';
  for (const auto& [k, v] : r.params) os << "param." << k << " = " << v << '\n';
  for (const auto& [k, v] : r.tolerances) os << "tolerance." << k << " = " << format_double(v) << '\n';
  for (const auto& [k, v] : r.scalars) os << "scalar." << k << " = " << format_double(v) << '\n';
  for (const auto& [k, v] : r.verdicts) os << "verdict." << k << " = " << v << '\n';
  os << "runtime_ms = " << r.runtime_ms << '\n';
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string());
  }
}

void emit(const ExperimentReport& r, Format format, const std::filesystem::path& path) {
  if (format == Format::JSON) {
    write_atomic(path, to_json_string(r));
    return;
  }
  write_atomic(path, to_csv(r));
  std::filesystem::path side = path;
  side += ".summary";
  write_atomic(side, summary_block(r));
}

// ---------------------------------------------------------------- Config

Config Config::from_string(const std::string& text, const std::string& origin) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::merge(const Config& over) {
  for (const auto& [k, v] : over.values_) values_[k] = v;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return parse_double(it->second);
  } catch (const UsageError&) {
    throw UsageError("config key '" + key + "': not a number: '" + it->second + "'");
  }
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long v = 0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw UsageError("config key '" + key + "': not an integer: '" + s + "'");
  return v;
}

std::uint64_t Config::get_seed(std::uint64_t fallback) const {
  const auto it = values_.find("seed");
  if (it == values_.end()) return fallback;
  std::uint64_t v = 0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw UsageError("seed: not an unsigned integer: " + s);
  return v;
}

}  // namespace mixnorm
