#include "hetnet/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hetnet/error.hpp"
#include "hetnet/format.hpp"

namespace hetnet {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
double mw_to_dbm(double mw) { return linear_to_db(mw); }

std::string_view to_string(BlankingVariant variant) {
  switch (variant) {
    case BlankingVariant::Off: return "off";
    case BlankingVariant::ReOnlyInBlank: return "re-only-in-blank";
    case BlankingVariant::AllSubframes: return "all-subframes";
  }
  return "off";
}

std::optional<BlankingVariant> parse_blanking_variant(std::string_view name) {
  for (auto v : {BlankingVariant::Off, BlankingVariant::ReOnlyInBlank,
                 BlankingVariant::AllSubframes}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

std::size_t ScenarioConfig::band_index(int band_id) const {
  for (std::size_t i = 0; i < bands.size(); ++i) {
    if (bands[i].band_id == band_id) return i;
  }
  throw Error(ErrorKind::BadReference, "band " + std::to_string(band_id), "no such band");
}

std::size_t ScenarioConfig::tier_index(int tier_id) const {
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    if (tiers[i].tier_id == tier_id) return i;
  }
  throw Error(ErrorKind::BadReference, "tier " + std::to_string(tier_id), "no such tier");
}

const BandConfig& ScenarioConfig::band_of(const TierConfig& tier) const {
  return bands[band_index(tier.band_id)];
}

std::optional<std::size_t> ScenarioConfig::macro_tier() const {
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    if (tiers[i].is_macro) return i;
  }
  return std::nullopt;
}

const RawConfig::Entry* RawConfig::Section::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

const RawConfig::Section* RawConfig::find(std::string_view name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string line_key(int line) { return "line " + std::to_string(line); }

}  // namespace

RawConfig parse_raw_config(std::string_view text) {
  RawConfig raw;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::ParseError, line_key(line_no), "unterminated section header");
      auto name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw Error(ErrorKind::ParseError, line_key(line_no), "empty section name");
      if (raw.find(name)) throw Error(ErrorKind::ParseError, std::string(name), "duplicate section");
      raw.sections.push_back({std::string(name), {}, line_no});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::ParseError, line_key(line_no), "expected key = value");
    if (raw.sections.empty()) throw Error(ErrorKind::ParseError, line_key(line_no), "entry outside of a section");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ParseError, line_key(line_no), "empty key");
    auto& section = raw.sections.back();
    if (section.find(key)) {
      throw Error(ErrorKind::ParseError, section.name + "." + std::string(key), "duplicate key");
    }
    section.entries.push_back({std::string(key), std::string(value), line_no});
  }
  return raw;
}

RawConfig read_raw_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, path, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_raw_config(ss.str());
}

namespace {

struct Quantity {
  double value = 0.0;
  std::string unit;
};

Quantity parse_quantity(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, key, "expected a number, got '" + std::string(text) + "'");
  }
  return {v, std::string(trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr))))};
}

double parse_plain(const std::string& key, std::string_view text) {
  auto q = parse_quantity(key, text);
  if (!q.unit.empty()) throw Error(ErrorKind::ParseError, key, "unexpected unit '" + q.unit + "'");
  return q.value;
}

int parse_int(const std::string& key, std::string_view text) {
  text = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, key, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw Error(ErrorKind::ParseError, key, "expected true or false");
}

// Unitless powers are read as dBm.
double parse_power_mw(const std::string& key, std::string_view text) {
  auto q = parse_quantity(key, text);
  if (q.unit.empty() || q.unit == "dBm") return dbm_to_mw(q.value);
  if (q.unit == "mW") return q.value;
  if (q.unit == "W") return q.value * 1e3;
  throw Error(ErrorKind::ParseError, key, "unknown power unit '" + q.unit + "'");
}

double parse_bandwidth_hz(const std::string& key, std::string_view text) {
  auto q = parse_quantity(key, text);
  if (q.unit.empty() || q.unit == "Hz") return q.value;
  if (q.unit == "kHz") return q.value * 1e3;
  if (q.unit == "MHz") return q.value * 1e6;
  if (q.unit == "GHz") return q.value * 1e9;
  throw Error(ErrorKind::ParseError, key, "unknown bandwidth unit '" + q.unit + "'");
}

double parse_ratio(const std::string& key, std::string_view text) {
  auto q = parse_quantity(key, text);
  if (q.unit.empty() || q.unit == "dB") return db_to_linear(q.value);
  if (q.unit == "lin") return q.value;
  throw Error(ErrorKind::ParseError, key, "unknown ratio unit '" + q.unit + "'");
}

std::optional<int> section_id(const std::string& name, std::string_view prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  return parse_int(name, std::string_view(name).substr(prefix.size()));
}

// Tracks which keys of a section were consumed so leftovers can be reported.
class SectionReader {
 public:
  SectionReader(const RawConfig::Section& section, std::string key_prefix)
      : section_(section), prefix_(std::move(key_prefix)) {}

  const std::string* get(std::string_view key) {
    used_.insert(std::string(key));
    const auto* e = section_.find(key);
    return e ? &e->value : nullptr;
  }
  const std::string& require(std::string_view key) {
    const auto* v = get(key);
    if (!v) throw Error(ErrorKind::MissingField, name(key));
    return *v;
  }
  std::string name(std::string_view key) const { return prefix_ + "." + std::string(key); }
  void finish() const {
    for (const auto& e : section_.entries) {
      if (!used_.count(e.key)) throw Error(ErrorKind::UnknownKey, name(e.key));
    }
  }

 private:
  const RawConfig::Section& section_;
  std::string prefix_;
  std::set<std::string> used_;
};

void require_range(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw Error(ErrorKind::OutOfRange, key, what);
}

}  // namespace

ScenarioConfig validate(const RawConfig& raw) {
  ScenarioConfig s;
  bool have_region = false;
  bool have_users = false;

  for (const auto& section : raw.sections) {
    if (section.name == "solver" || section.name == "mc") continue;

    if (section.name == "region") {
      have_region = true;
      SectionReader r(section, "region");
      s.region_side_km = parse_plain(r.name("side_km"), r.require("side_km"));
      if (auto* v = r.get("pathloss_exponent")) s.pathloss_exponent = parse_plain(r.name("pathloss_exponent"), *v);
      if (auto* v = r.get("min_distance_m")) s.min_distance_m = parse_plain(r.name("min_distance_m"), *v);
      if (auto* v = r.get("full_buffer_interference")) {
        s.full_buffer_interference = parse_bool(r.name("full_buffer_interference"), *v);
      }
      if (auto* v = r.get("amc_floor")) {
        auto t = trim(*v);
        if (t == "off") {
          s.amc_floor_db.reset();
        } else if (t == "on") {
          s.amc_floor_db = kDefaultAmcFloorDb;
        } else {
          auto q = parse_quantity(r.name("amc_floor"), t);
          if (!q.unit.empty() && q.unit != "dB") {
            throw Error(ErrorKind::ParseError, r.name("amc_floor"), "expected dB");
          }
          s.amc_floor_db = q.value;
        }
      }
      r.finish();
    } else if (auto id = section_id(section.name, "band.")) {
      SectionReader r(section, "bands[" + std::to_string(*id) + "]");
      BandConfig b;
      b.band_id = *id;
      b.bandwidth_hz = parse_bandwidth_hz(r.name("bandwidth"), r.require("bandwidth"));
      b.noise_mw = parse_power_mw(r.name("noise"), r.require("noise"));
      r.finish();
      require_range(b.bandwidth_hz > 0.0, r.name("bandwidth"), "must be > 0");
      require_range(b.noise_mw >= 0.0, r.name("noise"), "must be >= 0");
      s.bands.push_back(b);
    } else if (auto id = section_id(section.name, "tier.")) {
      SectionReader r(section, "tiers[" + std::to_string(*id) + "]");
      TierConfig t;
      t.tier_id = *id;
      t.density_per_km2 = parse_plain(r.name("density"), r.require("density"));
      t.tx_power_mw = parse_power_mw(r.name("tx_power"), r.require("tx_power"));
      t.band_id = parse_int(r.name("band"), r.require("band"));
      if (auto* v = r.get("bias")) t.bias = parse_ratio(r.name("bias"), *v);
      if (auto* v = r.get("macro")) t.is_macro = parse_bool(r.name("macro"), *v);
      r.finish();
      s.tiers.push_back(t);
    } else if (section.name == "users") {
      have_users = true;
      SectionReader r(section, "users");
      s.user_density_per_km2 = parse_plain(r.name("density"), r.require("density"));
      r.finish();
    } else if (section.name == "blanking") {
      SectionReader r(section, "blanking");
      if (auto* v = r.get("variant")) {
        auto parsed = parse_blanking_variant(trim(*v));
        if (!parsed) throw Error(ErrorKind::OutOfRange, r.name("variant"), "unknown variant '" + *v + "'");
        s.blanking.variant = *parsed;
      }
      if (auto* v = r.get("eta")) s.blanking.eta = parse_plain(r.name("eta"), *v);
      r.finish();
    } else {
      throw Error(ErrorKind::UnknownKey, section.name, "unknown section");
    }
  }

  if (!have_region) throw Error(ErrorKind::MissingField, "region");
  if (!have_users) throw Error(ErrorKind::MissingField, "users");
  if (s.bands.empty()) throw Error(ErrorKind::MissingField, "band");
  if (s.tiers.empty()) throw Error(ErrorKind::MissingField, "tier");

  std::sort(s.bands.begin(), s.bands.end(), [](const auto& a, const auto& b) { return a.band_id < b.band_id; });
  std::sort(s.tiers.begin(), s.tiers.end(), [](const auto& a, const auto& b) { return a.tier_id < b.tier_id; });
  check_invariants(s);
  return s;
}

void check_invariants(const ScenarioConfig& s) {
  require_range(s.region_side_km > 0.0, "region.side_km", "must be > 0");
  require_range(s.pathloss_exponent > 2.0, "region.pathloss_exponent", "must be > 2");
  require_range(s.min_distance_m > 0.0, "region.min_distance_m", "must be > 0");
  require_range(s.user_density_per_km2 >= 0.0, "users.density", "must be >= 0");
  require_range(s.blanking.eta >= 0.0 && s.blanking.eta <= 1.0, "blanking.eta", "must lie in [0, 1]");
  if (s.bands.empty()) throw Error(ErrorKind::MissingField, "band");
  if (s.tiers.empty()) throw Error(ErrorKind::MissingField, "tier");

  std::set<int> band_ids;
  for (const auto& b : s.bands) {
    const auto key = "bands[" + std::to_string(b.band_id) + "]";
    if (!band_ids.insert(b.band_id).second) throw Error(ErrorKind::OutOfRange, key, "duplicate band id");
    require_range(b.bandwidth_hz > 0.0, key + ".bandwidth", "must be > 0");
    require_range(b.noise_mw >= 0.0, key + ".noise", "must be >= 0");
  }
  std::set<int> tier_ids;
  for (const auto& t : s.tiers) {
    const auto key = "tiers[" + std::to_string(t.tier_id) + "]";
    if (!tier_ids.insert(t.tier_id).second) throw Error(ErrorKind::OutOfRange, key, "duplicate tier id");
    require_range(t.density_per_km2 >= 0.0, key + ".density", "must be >= 0");
    require_range(t.tx_power_mw > 0.0, key + ".tx_power", "must be > 0");
    require_range(t.bias > 0.0, key + ".bias", "must be > 0");
    if (t.is_macro) require_range(t.bias == 1.0, key + ".bias", "macro tier bias is fixed at 0 dB");
    if (!band_ids.count(t.band_id)) {
      throw Error(ErrorKind::BadReference, key + ".band", "band " + std::to_string(t.band_id) + " is not defined");
    }
  }
  if (s.blanking.variant != BlankingVariant::Off && s.blanking.eta > 0.0 && !s.macro_tier()) {
    throw Error(ErrorKind::BadReference, "blanking.variant", "blanking needs a macro tier");
  }
}

std::string serialize(const ScenarioConfig& s) {
  std::string out;
  auto kv = [&out](std::string_view k, const std::string& v) {
    out.append(k).append(" = ").append(v).append("\n");
  };
  out += "[region]\n";
  kv("side_km", format_exact(s.region_side_km));
  kv("pathloss_exponent", format_exact(s.pathloss_exponent));
  kv("min_distance_m", format_exact(s.min_distance_m));
  kv("full_buffer_interference", s.full_buffer_interference ? "true" : "false");
  kv("amc_floor", s.amc_floor_db ? format_exact(*s.amc_floor_db) + " dB" : "off");
  for (const auto& b : s.bands) {
    out += "\n[band." + std::to_string(b.band_id) + "]\n";
    kv("bandwidth", format_exact(b.bandwidth_hz) + " Hz");
    kv("noise", format_exact(b.noise_mw) + " mW");
  }
  for (const auto& t : s.tiers) {
    out += "\n[tier." + std::to_string(t.tier_id) + "]\n";
    kv("density", format_exact(t.density_per_km2));
    kv("tx_power", format_exact(t.tx_power_mw) + " mW");
    kv("bias", format_exact(t.bias) + " lin");
    kv("band", std::to_string(t.band_id));
    kv("macro", t.is_macro ? "true" : "false");
  }
  out += "\n[users]\n";
  kv("density", format_exact(s.user_density_per_km2));
  out += "\n[blanking]\n";
  kv("variant", std::string(to_string(s.blanking.variant)));
  kv("eta", format_exact(s.blanking.eta));
  return out;
}

namespace {

// Thermal noise density plus a 9 dB receiver noise figure.
double thermal_noise_mw(double bandwidth_hz) {
  return dbm_to_mw(-174.0 + 10.0 * std::log10(bandwidth_hz) + 9.0);
}

}  // namespace

ScenarioConfig reference_scenario() {
  ScenarioConfig s;
  s.region_side_km = 10.0;
  s.pathloss_exponent = 3.5;
  s.min_distance_m = 1.0;
  s.user_density_per_km2 = 30.0;
  s.bands = {BandConfig{1, 10e6, thermal_noise_mw(10e6)}};
  s.tiers = {
      TierConfig{1, 1.0, dbm_to_mw(46.0), 1.0, 1, true},
      TierConfig{2, 5.0, dbm_to_mw(23.0), 1.0, 1, false},
  };
  return s;
}

ScenarioConfig out_of_band_scenario() {
  auto s = reference_scenario();
  s.bands.push_back(BandConfig{2, 20e6, thermal_noise_mw(20e6)});
  s.tiers[1].band_id = 2;
  return s;
}

void set_small_cell_bias_db(ScenarioConfig& scenario, double bias_db) {
  for (auto& t : scenario.tiers) {
    if (!t.is_macro) t.bias = db_to_linear(bias_db);
  }
}

void set_small_cell_density_ratio(ScenarioConfig& scenario, double ratio) {
  auto macro = scenario.macro_tier();
  if (!macro) throw Error(ErrorKind::BadReference, "tiers", "density ratio needs a macro tier");
  const double base = scenario.tiers[*macro].density_per_km2;
  for (auto& t : scenario.tiers) {
    if (!t.is_macro) t.density_per_km2 = ratio * base;
  }
}

}  // namespace hetnet
