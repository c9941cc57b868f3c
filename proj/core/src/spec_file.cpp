#include "selberg/spec_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace selberg {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

// Strip a trailing comment that is not inside quotes.
std::string strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> string(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    used_.insert(key);
    return unquote(it->second.value);
  }

  std::optional<double> real(const std::string& key) {
    auto s = string(key);
    if (!s) return std::nullopt;
    return parse_real(*s, key);
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    auto s = string(key);
    if (!s) return std::nullopt;
    std::int64_t v = 0;
    const auto* end = s->data() + s->size();
    const auto res = std::from_chars(s->data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) fail(key, "expected an integer, got '" + *s + "'");
    return v;
  }

  std::optional<std::vector<std::string>> list(const std::string& key) {
    auto s = string(key);
    if (!s) return std::nullopt;
    std::string body = trim(*s);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') fail(key, "expected a [ ... ] list");
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = unquote(trim(item));
      if (!item.empty()) items.push_back(item);
    }
    return items;
  }

  double parse_real(const std::string& s, const std::string& key) const {
    // Accept plain decimals and simple fractions such as 11/2.
    const auto slash = s.find('/');
    if (slash != std::string::npos)
      return parse_real(trim(s.substr(0, slash)), key) / parse_real(trim(s.substr(slash + 1)), key);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      fail(key, "expected a number, got '" + s + "'");
    }
    if (pos != s.size()) fail(key, "expected a number, got '" + s + "'");
    return v;
  }

  std::complex<double> parse_complex(std::string s, const std::string& key) const {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) fail(key, "empty complex value");
    if (s.back() != 'i') return {parse_real(s, key), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto imag_part = [&](const std::string& t) {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return parse_real(t, key);
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    return {parse_real(s.substr(0, split), key), imag_part(s.substr(split))};
  }

  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key)) out.push_back(key);
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    const std::string where = it != entries_.end() ? "line " + std::to_string(it->second.line) + ": " : "";
    throw SpecFormatError(where + key + ": " + message);
  }

  const std::map<std::string, Entry>& entries() const { return entries_; }
  void mark_used(const std::string& key) { used_.insert(key); }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

std::vector<double> parse_poly(Reader& reader, const std::string& key) {
  std::vector<double> poly;
  const auto items = reader.list(key);
  for (const auto& item : *items) poly.push_back(reader.parse_real(item, key));
  if (poly.empty()) reader.fail(key, "empty polynomial");
  return poly;
}

}  // namespace

LFunctionSpec parse_spec(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // TOML table headers are ignored
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecFormatError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw SpecFormatError("line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, Entry{value, line_no}).second)
      throw SpecFormatError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }

  Reader reader(std::move(entries));
  const auto family_name = reader.string("family");
  if (!family_name) throw SpecFormatError("missing required key 'family'");

  Family family;
  try {
    family = family_from_string(*family_name);
  } catch (const std::invalid_argument& e) {
    reader.fail("family", e.what());
  }

  LFunctionSpec spec;
  switch (family) {
    case Family::zeta:
      spec = zeta_spec();
      break;
    case Family::dirichlet_char: {
      const auto disc = reader.integer("discriminant");
      const auto modulus = reader.integer("modulus");
      try {
        if (disc) {
          spec = dirichlet_character_spec(*disc);
          if (modulus && *modulus != (*disc < 0 ? -*disc : *disc))
            reader.fail("modulus", "does not match |discriminant|");
        } else if (modulus) {
          if (*modulus <= 0) reader.fail("modulus", "must be positive");
          spec = dirichlet_character_for_modulus(static_cast<std::uint64_t>(*modulus));
        } else {
          throw SpecFormatError("dirichlet_char needs 'modulus' or 'discriminant'");
        }
      } catch (const std::invalid_argument& e) {
        throw SpecFormatError(e.what());
      }
      break;
    }
    case Family::delta:
      spec = ramanujan_delta_spec();
      break;
    case Family::sato_tate: {
      const auto seed = reader.integer("seed");
      spec = random_sato_tate_spec(seed ? static_cast<std::uint64_t>(*seed) : 0);
      break;
    }
    case Family::custom: {
      const auto degree = reader.integer("degree");
      if (!degree) throw SpecFormatError("custom family needs 'degree'");
      std::map<std::uint64_t, std::vector<double>> factors;
      std::vector<double> fallback;
      std::vector<std::string> local_keys;
      for (const auto& [key, entry] : reader.entries())
        if (key.rfind("local.", 0) == 0) local_keys.push_back(key);
      for (const auto& key : local_keys) {
        const std::string suffix = key.substr(6);
        if (suffix == "default") {
          fallback = parse_poly(reader, key);
          continue;
        }
        std::uint64_t p = 0;
        const auto res = std::from_chars(suffix.data(), suffix.data() + suffix.size(), p);
        if (res.ec != std::errc() || res.ptr != suffix.data() + suffix.size() || p < 2)
          reader.fail(key, "expected local.<prime>");
        for (std::uint64_t q = 2; q * q <= p; ++q)
          if (p % q == 0) reader.fail(key, std::to_string(p) + " is not prime");
        factors[p] = parse_poly(reader, key);
      }
      spec = custom_spec("custom", static_cast<int>(*degree), std::move(factors), std::move(fallback));
      break;
    }
  }

  if (auto name = reader.string("name")) spec.name = *name;
  if (auto degree = reader.integer("degree")) {
    if (family != Family::custom && *degree != spec.degree)
      reader.fail("degree", "family " + *family_name + " has degree " + std::to_string(spec.degree));
    spec.degree = static_cast<int>(*degree);
  }
  if (auto theta = reader.real("theta")) spec.theta = *theta;
  if (auto kappa = reader.real("kappa")) spec.kappa = *kappa;
  if (auto epsilon = reader.real("epsilon")) spec.epsilon = *epsilon;
  if (auto shifts = reader.list("gamma_shifts")) {
    spec.gamma_shifts.clear();
    for (const auto& item : *shifts) spec.gamma_shifts.push_back(reader.parse_complex(item, "gamma_shifts"));
  }
  if (auto profile = reader.string("profile")) {
    if (*profile == "gsp4_spinor")
      spec.profile = ValidationProfile::gsp4_spinor;
    else if (*profile == "none")
      spec.profile = ValidationProfile::none;
    else
      reader.fail("profile", "unknown profile '" + *profile + "'");
  }
  // Family keys that do not apply to the chosen family.
  for (const char* key : {"modulus", "discriminant", "seed"})
    if (reader.has(key)) reader.string(key);

  const auto unused = reader.unused();
  if (!unused.empty()) reader.fail(unused.front(), "unknown key");
  if (family != Family::dirichlet_char && (reader.has("modulus") || reader.has("discriminant")))
    throw SpecFormatError("'modulus'/'discriminant' only apply to family dirichlet_char");
  if (family != Family::sato_tate && reader.has("seed"))
    throw SpecFormatError("'seed' only applies to family sato_tate");

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecFormatError(e.what());
  }
  return spec;
}

LFunctionSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_spec(buffer.str());
  } catch (const SpecFormatError& e) {
    throw SpecFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace selberg
