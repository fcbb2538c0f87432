#include "telic/experience.hpp"

#include <sstream>

namespace telic {

int Alphabet::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("unknown symbol \"" + name + "\"");
}

std::string encode_experience(const Experience& h, const Alphabet& obs, const Alphabet& act) {
    std::string out;
    for (std::size_t i = 0; i < h.steps.size(); ++i) {
        if (i > 0) out += ',';
        out += obs.name(h.steps[i].obs);
        out += ',';
        out += act.name(h.steps[i].act);
    }
    return out;
}

Experience parse_experience(const std::string& text, const Alphabet& obs, const Alphabet& act) {
    Experience h;
    if (text.empty()) return h;
    std::vector<std::string> tokens;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);
    if (tokens.size() % 2 != 0) {
        throw ConfigError("experience \"" + text + "\" has an odd number of symbols");
    }
    for (std::size_t i = 0; i < tokens.size(); i += 2) {
        h.steps.push_back({obs.index_of(tokens[i]), act.index_of(tokens[i + 1])});
    }
    return h;
}

void check_experience(const Experience& h, const Alphabet& obs, const Alphabet& act) {
    for (const Step& s : h.steps) {
        if (s.obs < 0 || s.obs >= obs.size()) {
            throw ConfigError("observation id out of range");
        }
        if (s.act < 0 || s.act >= act.size()) {
            throw ConfigError("action id out of range");
        }
    }
}

}  // namespace telic
