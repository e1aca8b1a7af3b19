#include "qldpc/registry.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "qldpc/error.hpp"

namespace qldpc {

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::GB: return "gb";
    case Family::GHP: return "ghp";
    case Family::HP: return "hp";
    case Family::External: return "matrix";
  }
  return "?";
}

namespace {

constexpr long kZero = -1;

GbSpec gb(std::size_t l, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> b) {
  return GbSpec{l, RingPoly(l, a), RingPoly(l, b)};
}

// Each cell is a monomial exponent or kZero.
GhpSpec ghp_monomial(std::size_t l, const std::vector<std::vector<long>>& cells,
                     std::initializer_list<std::size_t> b) {
  const std::size_t m = cells.size();
  const std::size_t n = cells.front().size();
  QcMatrix a(m, n, l);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cells[i][j] != kZero) a.set(i, j, RingPoly(l, {static_cast<std::size_t>(cells[i][j])}));
    }
  }
  return GhpSpec{std::move(a), RingPoly(l, b)};
}

// Rows are cyclic right shifts of the first row.
std::vector<std::vector<long>> cyclic_rows(std::vector<long> first) {
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < first.size(); ++i) {
    rows.push_back(first);
    std::rotate(first.rbegin(), first.rbegin() + 1, first.rend());
  }
  return rows;
}

HpSpec hp_cyclic(std::size_t l, std::initializer_list<std::size_t> h) {
  BitMatrix c = circulant_expand(RingPoly(l, h));
  return HpSpec{c, c};
}

std::map<std::string, RegistryEntry> make_registry() {
  std::map<std::string, RegistryEntry> r;
  auto add = [&](std::string id, Family f, RegistrySpec spec, ExpectedParams e, std::string desc) {
    r.emplace(id, RegistryEntry{id, f, std::move(spec), std::move(e), std::move(desc)});
  };

  add("A1", Family::GB, gb(127, {0, 15, 20, 28, 66}, {0, 58, 59, 100, 121}),
      {254, 28, {}, "0.110", "10", "5", "6"}, "GB [[254,28]], l=127");
  add("A2", Family::GB, gb(63, {0, 1, 14, 16, 22}, {0, 3, 13, 20, 42}),
      {126, 28, 8, "0.222", "10", "5", "4"}, "GB [[126,28,8]], l=63");
  add("A3", Family::GB, gb(24, {0, 2, 8, 15}, {0, 2, 12, 17}),
      {48, 6, 8, "0.125", "8", "4", "4"}, "GB [[48,6,8]], l=24");
  add("A4", Family::GB, gb(23, {0, 5, 8, 12}, {0, 1, 5, 7}),
      {46, 2, 9, "0.043", "8", "4", "4"}, "GB [[46,2,9]], l=23");
  add("A5", Family::GB, gb(90, {0, 28, 80, 89}, {0, 2, 21, 25}),
      {180, 10, {}, "0.056", "8", "4", "6"}, "GB [[180,10]], l=90");
  add("A6", Family::GB, gb(450, {0, 97, 372, 425}, {0, 50, 265, 390}),
      {900, 50, {}, "0.056", "8", "4", "6"}, "GB [[900,50]], l=450");

  add("B1", Family::GHP, ghp_monomial(63, cyclic_rows({27, kZero, kZero, kZero, kZero, 0, 54}), {0, 1, 6}),
      {882, 24, {}, "0.027", "6", "3", "6"}, "GHP [[882,24]], l=63, (3,6)-regular");
  add("B2", Family::GHP, ghp_monomial(63, cyclic_rows({27, kZero, kZero, 0, 18, 27, 0}), {0, 1, 6}),
      {882, 48, {}, "0.054", "8", "3,5", "6"}, "GHP [[882,48]], l=63");
  add("B3", Family::GHP,
      ghp_monomial(127,
                   {{0, kZero, 51, 52, kZero},
                    {kZero, 0, kZero, 111, 20},
                    {0, kZero, 98, kZero, 122},
                    {0, 80, kZero, 119, kZero},
                    {kZero, 0, 5, kZero, 106}},
                   {0, 1, 7}),
      {1270, 28, {}, "0.022", "6", "3", "6"}, "GHP [[1270,28]], l=127, (3,6)-regular");

  add("C1", Family::HP, hp_cyclic(63, {0, 3, 34, 41, 57}),
      {7938, 578, 16, "0.073", "10", "5", "6"}, "HP [[7938,578,16]] of the l=63 cyclic code h=1+x^3+x^34+x^41+x^57");
  add("C2", Family::HP, hp_cyclic(31, {0, 2, 5}),
      {1922, 50, 16, "0.026", "6", "3", "6"}, "HP [[1922,50,16]] of the [31,5,16] simplex code, h=1+x^2+x^5");

  add("D1", Family::External, std::monostate{}, {1024, 30, {}, "0.029", "8", "4", "4"},
      "Haah cubic code [[1024,30]] on the 8x8x8 lattice (import)");
  add("E1", Family::External, std::monostate{}, {900, 50, 14, "0.056", "8", "4", "4"},
      "hyperbicycle [[900,50,14]] (import)");
  add("F1", Family::External, std::monostate{}, {49, 1, 9, "0.020", "6,8", "6,8", "4"},
      "homological product [[49,1,9]] (import)");
  return r;
}

const std::map<std::string, RegistryEntry>& table() {
  static const std::map<std::string, RegistryEntry> t = make_registry();
  return t;
}

}  // namespace

const RegistryEntry& registry(const std::string& id) {
  const auto& t = table();
  auto it = t.find(id);
  if (it == t.end()) throw Error(ErrorKind::UnknownId, "no registry entry '" + id + "'");
  return it->second;
}

std::vector<std::string> registry_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, e] : table()) ids.push_back(id);
  return ids;
}

CssCode build_registry_code(const std::string& id, const std::string& external_dir) {
  return build_registry_code(registry(id), external_dir);
}

CssCode build_registry_code(const RegistryEntry& entry, const std::string& external_dir) {
  CssCode code;
  switch (entry.family) {
    case Family::GB: code = build_gb(std::get<GbSpec>(entry.spec)); break;
    case Family::GHP: code = build_ghp(std::get<GhpSpec>(entry.spec)); break;
    case Family::HP: code = build_hp(std::get<HpSpec>(entry.spec)); break;
    case Family::External: {
      namespace fs = std::filesystem;
      const fs::path hx = fs::path(external_dir) / (entry.id + ".hx");
      const fs::path hz = fs::path(external_dir) / (entry.id + ".hz");
      if (!fs::exists(hx) || !fs::exists(hz)) {
        throw Error(ErrorKind::MissingExternalMatrix,
                    entry.id + " needs " + hx.string() + " and " + hz.string());
      }
      code = make_css_code(load_bitmat(hx.string()), load_bitmat(hz.string()));
      break;
    }
  }
  code.name = entry.id;
  code.known_distance = entry.expected.d;
  return code;
}

}  // namespace qldpc
