#include "qldpc/spec_file.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>

#include "qldpc/error.hpp"

namespace qldpc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_size(std::string_view s, std::size_t line) {
  s = trim(s);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(line, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::size_t> exponents_at(std::string_view s, std::size_t line) {
  try {
    return parse_exponents(trim(s));
  } catch (const Error& e) {
    fail(line, e.what());
  }
}

// Splits on commas that are not inside braces.
std::vector<std::string_view> split_cells(std::string_view s, std::size_t line) {
  std::vector<std::string_view> cells;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') --depth;
    if (depth < 0 || depth > 1) fail(line, "unbalanced braces");
    if (s[i] == ',' && depth == 0) {
      cells.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) fail(line, "unbalanced braces");
  cells.push_back(trim(s.substr(start)));
  return cells;
}

std::string resolve(const std::string& base, std::string_view p) {
  std::filesystem::path path{std::string(p)};
  if (path.is_relative()) path = std::filesystem::path(base) / path;
  return path.string();
}

}  // namespace

CodeSpec parse_code_spec(std::istream& in, const std::string& base_dir) {
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::vector<std::pair<std::string, std::size_t>> a_rows;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) fail(line, "expected key=value");
    std::string key(trim(s.substr(0, eq)));
    std::string value(trim(s.substr(eq + 1)));
    if (key == "A") {
      a_rows.emplace_back(std::move(value), line);
      continue;
    }
    if (kv.count(key)) fail(line, "duplicate key '" + key + "'");
    kv.emplace(std::move(key), std::make_pair(std::move(value), line));
  }

  auto get = [&](const std::string& key) -> std::optional<std::pair<std::string, std::size_t>> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const std::string& key) {
    auto v = get(key);
    if (!v) fail(line, "missing key '" + key + "'");
    return *v;
  };
  auto ring = [&](const std::string& key, std::size_t l) {
    auto [text, ln] = require(key);
    try {
      return RingPoly(l, exponents_at(text, ln));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      fail(ln, e.what());
    }
  };

  const auto [family, fline] = require("family");
  CodeSpec out;
  if (family == "gb") {
    out.family = Family::GB;
    const auto [lt, ll] = require("l");
    const std::size_t l = parse_size(lt, ll);
    if (l == 0) fail(ll, "l must be positive");
    out.spec = GbSpec{l, ring("a", l), ring("b", l)};
  } else if (family == "ghp") {
    out.family = Family::GHP;
    const auto [lt, ll] = require("l");
    const std::size_t l = parse_size(lt, ll);
    if (l == 0) fail(ll, "l must be positive");
    if (a_rows.empty()) fail(line, "ghp needs at least one A= row");
    std::vector<std::vector<std::string_view>> cells;
    for (const auto& [text, ln] : a_rows) {
      cells.push_back(split_cells(text, ln));
      if (cells.back().size() != cells.front().size()) fail(ln, "ragged A matrix");
    }
    QcMatrix a(cells.size(), cells.front().size(), l);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::size_t ln = a_rows[i].second;
      for (std::size_t j = 0; j < cells[i].size(); ++j) {
        std::string_view c = cells[i][j];
        if (c == "-") continue;
        if (!c.empty() && c.front() == '{') {
          if (c.back() != '}') fail(ln, "bad cell '" + std::string(c) + "'");
          c = c.substr(1, c.size() - 2);
        }
        try {
          a.set(i, j, RingPoly(l, exponents_at(c, ln)));
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::Parse) throw;
          fail(ln, e.what());
        }
      }
    }
    out.spec = GhpSpec{std::move(a), ring("b", l)};
  } else if (family == "hp") {
    out.family = Family::HP;
    auto matrix_for = [&](const std::string& name, const BitMatrix* fallback) -> BitMatrix {
      if (auto f = get(name + "_file")) return load_bitmat(resolve(base_dir, f->first));
      if (get(name)) {
        const auto [lt, ll] = require("l");
        return circulant_expand(ring(name, parse_size(lt, ll)));
      }
      if (fallback) return *fallback;
      fail(line, "hp needs '" + name + "' or '" + name + "_file'");
    };
    BitMatrix a = matrix_for("a", nullptr);
    BitMatrix b = matrix_for("b", &a);
    out.spec = HpSpec{std::move(a), std::move(b)};
  } else if (family == "matrix") {
    out.family = Family::External;
    out.spec = std::monostate{};
    out.hx_path = resolve(base_dir, require("hx").first);
    out.hz_path = resolve(base_dir, require("hz").first);
  } else {
    fail(fline, "unknown family '" + family + "'");
  }
  return out;
}

CodeSpec load_code_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_code_spec(in, dir.empty() ? "." : dir.string());
}

CssCode build_code(const CodeSpec& spec, const std::string& name) {
  CssCode code;
  switch (spec.family) {
    case Family::GB: code = build_gb(std::get<GbSpec>(spec.spec)); break;
    case Family::GHP: code = build_ghp(std::get<GhpSpec>(spec.spec)); break;
    case Family::HP: code = build_hp(std::get<HpSpec>(spec.spec)); break;
    case Family::External:
      code = make_css_code(load_bitmat(spec.hx_path), load_bitmat(spec.hz_path));
      break;
  }
  if (!name.empty()) code.name = name;
  return code;
}

}  // namespace qldpc
