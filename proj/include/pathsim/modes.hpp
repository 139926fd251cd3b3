// Path-mode labels for the two-photon interferometer.
//
// Each photon occupies one of two spatial modes per stage. Letters group
// into layers: {a,b} source modes, {c,d} stage-1 outputs, {e,f} stage-3
// outputs. R-side modes are conventionally written primed (a'..f'); the
// side is carried separately so the letter alone stays in 'a'..'f'.

#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>

namespace pathsim {

enum class Side { L, R };

enum class Layer { Source, Stage1, Stage3 };

constexpr const char* side_name(Side s) { return s == Side::L ? "L" : "R"; }

constexpr bool is_mode_letter(char c) { return c >= 'a' && c <= 'f'; }

constexpr Layer layer_of(char letter) {
    switch (letter) {
        case 'a':
        case 'b': return Layer::Source;
        case 'c':
        case 'd': return Layer::Stage1;
        case 'e':
        case 'f': return Layer::Stage3;
        default: throw std::invalid_argument(std::string("invalid mode letter '") + letter + "'");
    }
}

constexpr std::array<char, 2> letters_of(Layer layer) {
    switch (layer) {
        case Layer::Source: return {'a', 'b'};
        case Layer::Stage1: return {'c', 'd'};
        case Layer::Stage3: return {'e', 'f'};
    }
    throw std::invalid_argument("invalid layer");
}

inline std::string layer_name(Layer layer) {
    const auto ls = letters_of(layer);
    return std::string("{") + ls[0] + "," + ls[1] + "}";
}

// One photon mode: a letter plus the side it belongs to ("b" or "b'").
struct Mode {
    char letter;
    Side side;

    friend bool operator==(const Mode&, const Mode&) = default;
};

inline Mode mode_l(char letter) { return Mode{letter, Side::L}; }
inline Mode mode_r(char letter) { return Mode{letter, Side::R}; }

inline std::string to_string(const Mode& m) {
    std::string s(1, m.letter);
    if (m.side == Side::R) s += '\'';
    return s;
}

// Joint outcome key: the L-side letter and the R-side letter.
struct ModePair {
    char l;
    char r;

    auto operator<=>(const ModePair&) const = default;
};

inline std::string to_string(const ModePair& p) {
    return std::string("(") + p.l + "," + p.r + "')";
}

}  // namespace pathsim
