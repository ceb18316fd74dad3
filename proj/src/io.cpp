#include "grand/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "grand/report.hpp"

namespace grand::io {

namespace {

struct Row {
  std::int64_t id;
  double weight;
  double value;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view field, const char* what, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  T v{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw InputError("cannot parse " + std::string(what) + " '" + std::string(field) + "'", line);
  }
  return v;
}

Row parse_csv_row(std::string_view text, std::size_t line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    fields.push_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 3) {
    throw InputError("expected 3 fields index,weight,value, got " + std::to_string(fields.size()),
                     line);
  }
  return Row{parse_number<std::int64_t>(fields[0], "index", line),
             parse_number<double>(fields[1], "weight", line),
             parse_number<double>(fields[2], "value", line), line};
}

Row parse_jsonl_row(const std::string& text, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid json: ") + e.what(), line);
  }
  if (!j.is_object()) throw InputError("expected an object {i, w, v}", line);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "i" && it.key() != "w" && it.key() != "v") {
      throw InputError("unknown key '" + it.key() + "'", line);
    }
  }
  for (const char* k : {"i", "w", "v"}) {
    if (!j.contains(k)) throw InputError(std::string("missing key '") + k + "'", line);
  }
  if (!j["i"].is_number_integer()) throw InputError("'i' must be an integer", line);
  if (!j["w"].is_number()) throw InputError("'w' must be a number", line);
  if (!j["v"].is_number()) throw InputError("'v' must be a number", line);
  return Row{j["i"].get<std::int64_t>(), j["w"].get<double>(), j["v"].get<double>(), line};
}

void require_keys(const nlohmann::json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InputError("config: '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) {
      throw InputError("config: unknown key '" + (where.empty() ? "" : where + ".") + it.key() +
                       "'");
    }
  }
}

template <class T>
T get_as(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  const std::string name = where + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw InputError("config: '" + name + "' must be a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_unsigned()) {
      throw InputError("config: '" + name + "' must be a non-negative integer");
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw InputError("config: '" + name + "' must be a number");
  } else {
    if (!v.is_string()) throw InputError("config: '" + name + "' must be a string");
  }
  return v.get<T>();
}

template <class T>
void read_if(const nlohmann::json& obj, const char* key, const std::string& where, T& into) {
  if (obj.contains(key)) into = get_as<T>(obj, key, where);
}

template <class T>
void read_if(const nlohmann::json& obj, const char* key, const std::string& where,
             std::optional<T>& into) {
  if (obj.contains(key)) into = get_as<T>(obj, key, where);
}

}  // namespace

FunctionFormat parse_format(const std::string& name) {
  if (name == "csv") return FunctionFormat::csv;
  if (name == "jsonl") return FunctionFormat::jsonl;
  throw InputError("unknown format '" + name + "' (expected csv or jsonl)");
}

SampledFunction parse_function(std::istream& in, FunctionFormat format, Topology topology,
                               const std::string& label) {
  std::vector<Row> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view t = trim(text);
    if (t.empty()) continue;
    if (format == FunctionFormat::csv && rows.empty() && t == "index,weight,value") continue;
    rows.push_back(format == FunctionFormat::csv ? parse_csv_row(t, line)
                                                 : parse_jsonl_row(std::string(t), line));
    const Row& r = rows.back();
    if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
      throw InputError("non-positive weight for index " + std::to_string(r.id), line);
    }
    if (!std::isfinite(r.value)) {
      throw InputError("non-finite value for index " + std::to_string(r.id), line);
    }
  }
  if (rows.empty()) throw InputError("no rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].id == rows[i - 1].id) {
      throw InputError("duplicate index " + std::to_string(rows[i].id) + " (first on line " +
                           std::to_string(rows[i - 1].line) + ")",
                       rows[i].line);
    }
  }

  std::vector<std::int64_t> ids;
  std::vector<double> weights;
  std::vector<double> values;
  for (const Row& r : rows) {
    ids.push_back(r.id);
    weights.push_back(r.weight);
    values.push_back(r.value);
  }
  auto space = share(MeasureSpace(std::move(ids), std::move(weights), topology, label));
  return SampledFunction(std::move(space), std::move(values));
}

SampledFunction load_function(const std::filesystem::path& path, FunctionFormat format,
                              Topology topology) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return parse_function(in, format, topology, path.filename().string());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_function(std::ostream& out, const SampledFunction& f, FunctionFormat format) {
  const auto ids = f.space().ids();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::string w = report::format_double(f.space().weight(i));
    // json readers take "-0" for the integer 0; keep the sign visible.
    const std::string v =
        f[i] == 0.0 && std::signbit(f[i]) ? "-0.0" : report::format_double(f[i]);
    if (format == FunctionFormat::csv) {
      out << ids[i] << ',' << w << ',' << v << '\n';
    } else {
      out << "{\"i\":" << ids[i] << ",\"w\":" << w << ",\"v\":" << v << "}\n";
    }
  }
}

EpsilonGrid RunConfig::grid_for(const GrandExponent& exp) const {
  return make_epsilon_grid(exp, static_cast<int>(eps_grid.points),
                           eps_grid.min_eps_fraction * exp.max_eps(),
                           static_cast<int>(eps_grid.refinement_rounds), eps_grid.tolerance,
                           eps_grid.include_zero_limit);
}

Window RunConfig::make_window(const MeasureSpace& space) const {
  if (!window.members.empty()) return Window::make(space, window.members);
  if (!window.size) throw InputError("config: a window (window.size or window.members) is required");
  return Window::contiguous(space, window.start, *window.size);
}

MeasureSpace RunConfig::make_space() const {
  if (!space.atoms) throw InputError("config: space.atoms is required without an input file");
  const std::size_t n = *space.atoms;
  if (n == 0) throw InputError("config: space.atoms must be positive");
  if (space.kind == SpaceKind::counting || !space.probability) {
    return MeasureSpace::uniform(n, 1.0, topology(), "counting");
  }
  return MeasureSpace::probability(n, topology());
}

RunConfig parse_config(const nlohmann::json& doc) {
  RunConfig c;
  require_keys(doc, "", {"eps_grid", "space", "exponents", "window", "bupu", "seed", "trials",
                         "witness"});

  if (doc.contains("eps_grid")) {
    const auto& g = doc["eps_grid"];
    require_keys(g, "eps_grid",
                 {"points", "min_eps_fraction", "refinement_rounds", "tolerance",
                  "include_zero_limit"});
    read_if(g, "points", "eps_grid", c.eps_grid.points);
    read_if(g, "min_eps_fraction", "eps_grid", c.eps_grid.min_eps_fraction);
    read_if(g, "refinement_rounds", "eps_grid", c.eps_grid.refinement_rounds);
    read_if(g, "tolerance", "eps_grid", c.eps_grid.tolerance);
    read_if(g, "include_zero_limit", "eps_grid", c.eps_grid.include_zero_limit);
  }
  if (doc.contains("space")) {
    const auto& s = doc["space"];
    require_keys(s, "space", {"kind", "atoms", "normalization"});
    if (s.contains("kind")) {
      const auto kind = get_as<std::string>(s, "kind", "space");
      if (kind == "interval") c.space.kind = SpaceKind::interval;
      else if (kind == "cyclic") c.space.kind = SpaceKind::cyclic;
      else if (kind == "counting") c.space.kind = SpaceKind::counting;
      else throw InputError("config: space.kind must be interval, cyclic or counting");
    }
    read_if(s, "atoms", "space", c.space.atoms);
    if (s.contains("normalization")) {
      const auto norm = get_as<std::string>(s, "normalization", "space");
      if (norm == "probability") c.space.probability = true;
      else if (norm == "counting") c.space.probability = false;
      else throw InputError("config: space.normalization must be probability or counting");
    }
    if (c.space.kind == SpaceKind::counting) c.space.probability = false;
  }
  if (doc.contains("exponents")) {
    const auto& e = doc["exponents"];
    require_keys(e, "exponents", {"p", "q", "theta"});
    read_if(e, "p", "exponents", c.exponents.p);
    read_if(e, "q", "exponents", c.exponents.q);
    read_if(e, "theta", "exponents", c.exponents.theta);
  }
  if (doc.contains("window")) {
    const auto& w = doc["window"];
    require_keys(w, "window", {"size", "start", "members"});
    read_if(w, "size", "window", c.window.size);
    read_if(w, "start", "window", c.window.start);
    if (w.contains("members")) {
      if (!w["members"].is_array()) throw InputError("config: window.members must be an array");
      for (const auto& m : w["members"]) {
        if (!m.is_number_unsigned()) {
          throw InputError("config: window.members must hold non-negative integers");
        }
        c.window.members.push_back(m.get<std::size_t>());
      }
    }
    if (c.window.size && !c.window.members.empty()) {
      throw InputError("config: give window.size or window.members, not both");
    }
  }
  if (doc.contains("bupu")) {
    const auto& b = doc["bupu"];
    require_keys(b, "bupu", {"block_size", "allow_ragged"});
    read_if(b, "block_size", "bupu", c.bupu.block_size);
    read_if(b, "allow_ragged", "bupu", c.bupu.allow_ragged);
  }
  if (doc.contains("witness")) {
    require_keys(doc["witness"], "witness", {"m"});
    read_if(doc["witness"], "m", "witness", c.witness_m);
  }
  read_if(doc, "seed", "", c.seed);
  read_if(doc, "trials", "", c.trials);

  // Re-validate through the domain types so a bad config fails at load time.
  try {
    const GrandExponent local = c.local();
    const GrandExponent global = c.global();
    if (c.eps_grid.points < 2) throw DomainError("eps_grid.points must be at least 2");
    if (!(c.eps_grid.min_eps_fraction > 0.0 && c.eps_grid.min_eps_fraction < 1.0)) {
      throw DomainError("eps_grid.min_eps_fraction must lie in (0, 1)");
    }
    c.grid_for(local);
    c.grid_for(global);
    if (c.bupu.block_size && *c.bupu.block_size == 0) {
      throw DomainError("bupu.block_size must be positive");
    }
    if (c.window.size && *c.window.size == 0) throw DomainError("window.size must be positive");
    if (c.witness_m < 2) throw DomainError("witness.m must be at least 2");
  } catch (const DomainError& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

}  // namespace grand::io
