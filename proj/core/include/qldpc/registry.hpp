#pragma once

// Named codes with their reference parameters.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qldpc/construction.hpp"

namespace qldpc {

enum class Family { GB, GHP, HP, External };

const char* to_string(Family f) noexcept;

struct ExpectedParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<std::size_t> d;
  std::string rate;   // three decimals
  std::string w_r;
  std::string w_c;    // "5" or "3,5"
  std::string girth;
};

/// External entries carry no construction; their matrices are read from
/// `<dir>/<id>.hx` and `<dir>/<id>.hz`.
using RegistrySpec = std::variant<GbSpec, GhpSpec, HpSpec, std::monostate>;

struct RegistryEntry {
  std::string id;
  Family family = Family::External;
  RegistrySpec spec;
  ExpectedParams expected;
  std::string description;
};

/// Throws UnknownId.
const RegistryEntry& registry(const std::string& id);
std::vector<std::string> registry_ids();

/// Builds the code for `id`. External entries are loaded from `external_dir`;
/// throws MissingExternalMatrix when the files are absent.
CssCode build_registry_code(const std::string& id, const std::string& external_dir = ".");
CssCode build_registry_code(const RegistryEntry& entry, const std::string& external_dir = ".");

}  // namespace qldpc
