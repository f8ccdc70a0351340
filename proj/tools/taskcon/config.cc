/// @file config.cc
#include "config.h"

#include <charconv>
#include <vector>

namespace taskcon::cli {

namespace {

std::string_view Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Drops a `#` comment that is not inside a string.
std::string_view StripComment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

class LineParser {
 public:
  LineParser(std::string_view file, std::size_t line) : file_(file), line_(line) {}

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ConfigError(std::string(file_) + ":" + std::to_string(line_) + ": " + msg);
  }

  bool Bool(std::string_view v) const {
    if (v == "true") return true;
    if (v == "false") return false;
    Fail("expected true or false");
  }

  double Number(std::string_view v) const {
    double d = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (ec != std::errc() || ptr != v.data() + v.size()) Fail("expected a number");
    return d;
  }

  int Integer(std::string_view v) const {
    int i = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), i);
    if (ec != std::errc() || ptr != v.data() + v.size()) Fail("expected an integer");
    return i;
  }

  std::string String(std::string_view v) const {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') Fail("expected a string");
    return std::string(v.substr(1, v.size() - 2));
  }

  std::vector<std::string> StringArray(std::string_view v) const {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') Fail("expected an array");
    std::vector<std::string> out;
    std::string_view body = Trim(v.substr(1, v.size() - 2));
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = Trim(body.substr(0, comma));
      if (!item.empty()) out.push_back(String(item));
      if (comma == std::string_view::npos) break;
      body = Trim(body.substr(comma + 1));
    }
    return out;
  }

 private:
  std::string_view file_;
  std::size_t line_;
};

}  // namespace

void CheckQuantile(double quantile) {
  if (!(quantile > 0 && quantile <= 1)) {
    throw ConfigError("quantile must lie in (0, 1]");
  }
}

RunConfig ParseConfig(std::string_view text, std::string_view file_name) {
  RunConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    LineParser p(file_name, line_no);
    std::string_view line = Trim(StripComment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') p.Fail("malformed section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (section != "derive") p.Fail("unknown section [" + section + "]");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) p.Fail("expected key = value");
    std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));

    if (section.empty() && key == "strict") {
      cfg.strict = p.Bool(value);
    } else if (section.empty() && key == "quantile") {
      cfg.quantile = p.Number(value);
      try {
        CheckQuantile(cfg.quantile);
      } catch (const ConfigError& e) {
        p.Fail(e.what());
      }
    } else if (section.empty() && key == "suppress") {
      for (const auto& id : p.StringArray(value)) {
        auto rule = ParseSemanticRule(id);
        if (!rule) p.Fail("unknown rule id " + id);
        cfg.suppressed.insert(*rule);
      }
    } else if (section == "derive" && key == "mode") {
      std::string mode = p.String(value);
      if (mode == "additive") cfg.mode = tailor::DerivationPolicy::Mode::kAdditive;
      else if (mode == "multiplicative") cfg.mode = tailor::DerivationPolicy::Mode::kMultiplicative;
      else p.Fail("mode must be additive or multiplicative");
    } else if (section == "derive" && key == "step") {
      cfg.step = p.Number(value);
      if (!(*cfg.step > 0)) p.Fail("step must be positive");
    } else if (section == "derive" && key == "rounding") {
      cfg.rounding = p.Integer(value);
      if (cfg.rounding < 0) p.Fail("rounding must not be negative");
    } else {
      p.Fail("unknown key " + (section.empty() ? key : section + "." + key));
    }
  }
  return cfg;
}

}  // namespace taskcon::cli
