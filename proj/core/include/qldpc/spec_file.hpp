#pragma once

// Line-oriented key=value code descriptions.
//
//   family=gb|ghp|hp|matrix
//   l=<int>                      circulant size (gb, ghp, polynomial hp)
//   a=<e0,e1,...>  b=<...>       exponent lists
//   A=<cell>,<cell>,...          one line per row of the GHP matrix; a cell is
//                                '-', a single exponent, or a braced list {e0,e1}
//   a_file=, b_file=             bitmat v1 inputs for hp
//   hx=, hz=                     bitmat v1 inputs for matrix
//
// Blank lines and lines starting with '#' are ignored. Relative paths are
// resolved against the directory of the spec file.

#include <iosfwd>
#include <string>

#include "qldpc/registry.hpp"

namespace qldpc {

struct CodeSpec {
  Family family = Family::GB;
  RegistrySpec spec;
  std::string hx_path;  // matrix family only
  std::string hz_path;
};

/// Throws Parse with the offending line number.
CodeSpec parse_code_spec(std::istream& in, const std::string& base_dir = ".");
CodeSpec load_code_spec(const std::string& path);
CssCode build_code(const CodeSpec& spec, const std::string& name = {});

}  // namespace qldpc
