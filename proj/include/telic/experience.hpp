#pragma once

#include <compare>
#include <string>
#include <vector>

#include "telic/errors.hpp"

namespace telic {

/// Named symbol set for observations or actions. Symbol ids are indices.
struct Alphabet {
    std::vector<std::string> symbols;

    int size() const { return static_cast<int>(symbols.size()); }
    const std::string& name(int id) const { return symbols.at(static_cast<std::size_t>(id)); }
    int index_of(const std::string& name) const;
};

struct Step {
    int obs = 0;
    int act = 0;
    auto operator<=>(const Step&) const = default;
};

/// A finite observation-action sequence. The empty experience is valid.
struct Experience {
    std::vector<Step> steps;

    std::size_t length() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
    auto operator<=>(const Experience&) const = default;
};

/// Render as "o0,a1,o0,a0". The empty experience renders as "".
std::string encode_experience(const Experience& h, const Alphabet& obs, const Alphabet& act);

/// Parse the comma-separated alternating form; throws ConfigError on
/// malformed input or unknown symbols.
Experience parse_experience(const std::string& text, const Alphabet& obs, const Alphabet& act);

/// Validate that all symbol ids fall inside the alphabets.
void check_experience(const Experience& h, const Alphabet& obs, const Alphabet& act);

}  // namespace telic
