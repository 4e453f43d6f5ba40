#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lqg/error.hpp"
#include "lqg/lalgebra.hpp"

namespace lqg {

/// Text format of a bundle (lattice + algebra + equality table):
///
///     lqg-bundle 1
///     [meta]                  optional; "name = ..." / "description = ..."
///     [lattice.elements]      element names, whitespace separated
///     [lattice.covers]        one "lower upper" pair per line
///                             ([lattice.order] instead: full order pairs)
///     [algebra.carrier]       carrier element names
///     [algebra.ops]           "op NAME ARITY" then the table: one row per
///                             line for binary ops, a single line otherwise
///     [equality.table]        carrier-squared table of lattice names
///
/// '#' starts a comment line. Serialization always writes covers and uses
/// declaration order everywhere.
inline constexpr std::string_view kBundleMagic = "lqg-bundle";
inline constexpr int kBundleVersion = 1;

struct BundleMeta {
  std::optional<std::string> name;
  std::optional<std::string> description;

  friend bool operator==(const BundleMeta&, const BundleMeta&) = default;
};

struct Bundle {
  BundleMeta meta;
  LRelation equality;

  const FiniteLattice& lattice() const { return equality.lattice(); }
  const FiniteAlgebra& algebra() const { return equality.algebra(); }
};

/// Error raised while reading a bundle. `line` is 1-based, 0 when the
/// problem is not tied to one line.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t line,
             std::string section)
      : Error(kind, message), line_(line), section_(std::move(section)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& section() const noexcept { return section_; }

 private:
  std::size_t line_;
  std::string section_;
};

Bundle parse_bundle(std::string_view text);
std::string serialize_bundle(const Bundle& bundle);

/// Reads a file and parses it; I/O failures are reported as SyntaxError.
Bundle load_bundle(const std::string& path);

}  // namespace lqg
