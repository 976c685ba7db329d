#pragma once

// Workspace files (*.nws): line-based sections with `key = value` pairs.
//
//   [field]                 field = "GF(13)", other keys name constants
//                           ("root_of_unity(4)", an integer or a fraction)
//   [algebra <name>]        generators, degrees, relations | base, extra_relations
//   [module <name>]         algebra, kind = cyclic|free|sum, relations, of, shifts
//   [automorphism <name>]   algebra, images
//   [window]                lo, hi, hmax, cap
//
// Values are comma-separated lists of quoted strings or bare tokens; `#`
// starts a comment outside quotes.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/gmodule.hpp"
#include "ncg/homology.hpp"

namespace ncg {

struct WorkspaceFile {
  struct Constant {
    std::string name;
    std::string value;
    bool operator==(const Constant&) const = default;
  };
  struct AlgebraDecl {
    std::string name;
    std::vector<std::string> generators;
    std::vector<int> degrees;
    std::vector<std::string> relations;
    std::string base;
    std::vector<std::string> extra_relations;
    int line = 0;
    bool operator==(const AlgebraDecl& o) const {
      return name == o.name && generators == o.generators && degrees == o.degrees &&
             relations == o.relations && base == o.base && extra_relations == o.extra_relations;
    }
  };
  struct ModuleDecl {
    std::string name;
    std::string algebra;
    std::string kind;
    std::vector<std::string> relations;
    std::vector<std::string> of;
    std::vector<int> shifts;
    int line = 0;
    bool operator==(const ModuleDecl& o) const {
      return name == o.name && algebra == o.algebra && kind == o.kind &&
             relations == o.relations && of == o.of && shifts == o.shifts;
    }
  };
  struct AutomorphismDecl {
    std::string name;
    std::string algebra;
    std::vector<std::string> images;
    int line = 0;
    bool operator==(const AutomorphismDecl& o) const {
      return name == o.name && algebra == o.algebra && images == o.images;
    }
  };

  std::string field = "GF(13)";
  std::vector<Constant> constants;
  std::vector<AlgebraDecl> algebras;
  std::vector<ModuleDecl> modules;
  std::vector<AutomorphismDecl> automorphisms;
  std::optional<int> lo, hi, hmax, cap;

  const AlgebraDecl* find_algebra(const std::string& name) const;
  const ModuleDecl* find_module(const std::string& name) const;
  const AutomorphismDecl* find_automorphism(const std::string& name) const;
  /// Window defaults overridden by the [window] section.
  Window window() const;

  bool operator==(const WorkspaceFile&) const = default;
};

/// Syntax, then references, then every expression under the declared field.
/// ParseError (with line:column and the expected tokens), UnknownReference,
/// NonHomogeneous.
WorkspaceFile parse_workspace(std::string_view text);

/// Reference and expression checks only, with `field` overriding the file's.
void validate_workspace(const WorkspaceFile& ws, const std::string& field = "");

std::string serialize_workspace(const WorkspaceFile& ws);

/// The workspace shipped with the tool: S, A = S/(x^2 + y^2), X1..X4, X.
std::string_view builtin_workspace_text();

/// Algebras, modules and automorphisms of a workspace over a concrete field,
/// built on first use and cached.  Algebras are truncated at degree D.
template <class K>
class Session {
 public:
  using Elem = typename K::Elem;

  Session(const WorkspaceFile& ws, K field, int D);

  const K& field() const noexcept { return field_; }
  int truncation() const noexcept { return D_; }
  const std::map<std::string, Elem>& constants() const noexcept { return constants_; }
  const WorkspaceFile& file() const noexcept { return ws_; }

  PresentedPtr<K> algebra(const std::string& name);
  /// The presentation of a declared algebra (base relations included).
  Presentation<K> presentation(const std::string& name);
  /// A declared module, or the regular module of a declared algebra.
  ModulePtr<K> module(const std::string& name);
  /// Direct summands of a `sum` module with their shifts applied; a single
  /// entry for other kinds.
  std::vector<ModulePtr<K>> summands(const std::string& name);
  GradedAutomorphism<K> automorphism(const std::string& name);
  /// Parses an expression over the generators of `algebra`.
  NcPoly<K> parse(const std::string& algebra, const std::string& text);

 private:
  FreeAlgebraPtr<K> free_of(const std::string& name);

  WorkspaceFile ws_;
  K field_;
  int D_;
  std::map<std::string, Elem> constants_;
  std::map<std::string, FreeAlgebraPtr<K>> frees_;
  std::map<std::string, PresentedPtr<K>> algebras_;
  std::map<std::string, ModulePtr<K>> modules_;
};

/// Evaluates a [field] constant: root_of_unity(n), an integer, or a/b.
template <class K>
typename K::Elem evaluate_constant(const K& field, const std::string& text);

}  // namespace ncg
