#pragma once

#include <string>

#include "ktj/ktg.hpp"

namespace ktj {

/// Parse the move DSL:
///   file := "tet" NEWLINE (move NEWLINE)*
///   move := "A" vid | "H+" eid | "H-" eid | "U" eid ["rings=" INT]
/// '#' starts a comment; CRLF input is accepted. Besides syntax, the sequence
/// is validated by replay, so unknown targets are rejected here with their
/// source line.
MoveSequence parse_sequence(const std::string& text);

/// Canonical text form; parse(serialize(s)) == s.
std::string serialize(const MoveSequence& seq);

} // namespace ktj
