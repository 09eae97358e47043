#pragma once

// JSON files describing algebras and morphisms.
//
// Algebra:
//   {"ring": "Q",
//    "basis": [{"label": "x", "parity": 0}, ...],
//    "brackets": [{"left": "x", "right": "y", "value": [{"basis": "z", "coeff": "1"}]}]}
// Only pairs with left <= right (basis order) may be listed; omitted pairs
// are zero. "ring" falls back to PBWK_DEFAULT_RING. Coefficients are strings
// "p/q" or JSON integers.
//
// Morphism (endomorphism unless "target" names another algebra file,
// resolved relative to the morphism file):
//   {"target": "other.json",
//    "images": [{"basis": "x", "value": [{"basis": "x", "coeff": "2"}]}]}
// Basis elements without an entry map to zero.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pbwk/superlie.hpp"

namespace pbwk {

/// `ring` overrides the ring stored in the document.
AlgebraPtr algebra_from_json(std::string_view document, std::optional<RingSpec> ring = std::nullopt);
std::string algebra_to_json(const SuperLieAlgebra& algebra);

/// Reads a file, or a built-in when `source` is "builtin:NAME" with NAME one
/// of heisenberg, sl2, super, odd-square, odd-line.
AlgebraPtr load_algebra(const std::string& source, std::optional<RingSpec> ring = std::nullopt);

LieMorphism morphism_from_json(std::string_view document, const AlgebraPtr& source, const AlgebraPtr& target);
LieMorphism load_morphism(const std::filesystem::path& path, const AlgebraPtr& source);

}  // namespace pbwk
