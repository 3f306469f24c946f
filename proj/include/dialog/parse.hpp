#pragma once

#include <string_view>

#include "dialog/core.hpp"

namespace dialog {

/// Spec files: one or more `("TAG" term...)` expressions, read as a union.
/// `;` starts a comment running to end of line in all three formats.
SpecUnion parse_spec(std::string_view text);

/// Episode files: `((a b c) ((a b) c) ...)`; a parenthesized group of two or
/// more questions is one multi-response utterance. Duplicate episodes collapse.
EnumeratedSpec parse_episodes(std::string_view text);

/// Domain files: `(domain size (small medium large))` repeated.
Domains parse_domains(std::string_view text);

}  // namespace dialog
