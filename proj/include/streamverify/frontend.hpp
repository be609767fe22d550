#pragma once

#include "streamverify/ast.hpp"

#include <map>
#include <string>
#include <string_view>

namespace streamverify {

/// Values for free named constants (`--const eps=0.1`), as literal text.
using ConstantBindings = std::map<std::string, std::string, std::less<>>;

/// Parses specification text. Throws SpecError with position and the set of
/// expected tokens on syntax errors, duplicate stream names, unknown types and
/// `@` activation clauses.
RawSpecification parse(std::string_view text);

/// Resolves names and infers a concrete type for every expression node.
/// Throws SpecError on type mismatches and unresolvable types.
Specification infer_types(const RawSpecification& raw, const ConstantBindings& constants = {});

/// Rewrites abbreviations (ranges, zero offsets, abs/min/max, trigger_once)
/// into the core grammar. Idempotent.
Specification desugar(const Specification& spec);

/// parse + infer_types + desugar.
Specification load_specification(std::string_view text, const ConstantBindings& constants = {});

/// Renders an expression in surface syntax that parses back to the same tree.
std::string to_source(const ExprPtr& e);
/// Renders a whole specification (declared types made explicit).
std::string to_source(const Specification& spec);

}  // namespace streamverify
