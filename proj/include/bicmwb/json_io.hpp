#pragma once

#include <optional>
#include <string>

#include "bicmwb/constellation.hpp"

namespace bicmwb {

/// Constellation parsed from the JSON interchange format. `labeled` is set
/// when the input carries a label table.
struct LoadedConstellation {
    Constellation base;
    std::optional<LabeledConstellation> labeled;
};

/// Parses { "m": int?, "points": [[re, im], ...], "probs": [p, ...]?,
/// "labels": ["0101", ...]? }. Probabilities default to uniform. Throws
/// std::invalid_argument naming the first violated invariant.
LoadedConstellation parse_constellation_json(const std::string& text);

/// Same, reading from a file path.
LoadedConstellation load_constellation_json(const std::string& path);

} // namespace bicmwb
