#pragma once

#include <map>
#include <string>

#include "gbc/ak_pair.hpp"
#include "gbc/bundle.hpp"
#include "gbc/chain.hpp"

namespace gbc {

/// Parsed fixture database: atlases, bundles, sections, chains, forms and
/// (A,k)-pairs described in the structured-text grammar
/// (docs/fixture_grammar.md).
struct FixtureSet {
  std::map<std::string, AtlasPtr> atlases;
  std::map<std::string, BundleWithConnection> bundles;
  struct SectionEntry {
    std::string bundle;
    SectionField section;
  };
  std::map<std::string, SectionEntry> sections;
  std::map<std::string, Chain> chains;
  std::map<std::string, FormField> forms;
  std::map<std::string, AkPair> pairs;

  const AtlasPtr& atlas(const std::string& n) const;
  const BundleWithConnection& bundle(const std::string& n) const;
  const SectionField& section(const std::string& n) const;
  const Chain& chain(const std::string& n) const;
  const FormField& form(const std::string& n) const;
  const AkPair& pair(const std::string& n) const;
};

using ParamMap = std::map<std::string, double>;

/// Parse fixture text.  `overrides` replaces values of `param` lines by name
/// (e.g. the monopole charge).
FixtureSet load_fixtures(const std::string& text, const ParamMap& overrides = {});

FixtureSet load_fixtures_file(const std::string& path, const ParamMap& overrides = {});

/// The embedded standard fixtures: circle, torus and sphere atlases, trivial
/// flat bundles, the round-sphere tangent bundle, the charge-m monopole
/// bundle, their sections, the standard chains, and the Dirac pair.
const std::string& builtin_fixture_text();

/// Convenience: parsed builtins with parameter overrides applied.
FixtureSet builtin_fixtures(const ParamMap& overrides = {});

/// Named bundle constructor over the builtin fixtures.  Supported names:
/// trivial_s1_r2, trivial_t2_r2, trivial_t2_r4, trivial_s2_r2, tangent_s2,
/// monopole (parameter "m", integer charge).
BundleWithConnection builtin_bundle(const std::string& name, const ParamMap& params = {});

} // namespace gbc
