#include "chargelimit/cli/quantity.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "chargelimit/error.hpp"

namespace chargelimit::cli {

namespace {

struct Suffix {
    std::string_view token;
    Dimension dim;
    double scale;
};

constexpr std::array kSuffixes{
    Suffix{"nm", Dimension::length, 1e-9},     Suffix{"um", Dimension::length, 1e-6},
    Suffix{"mm", Dimension::length, 1e-3},     Suffix{"m", Dimension::length, 1.0},
    Suffix{"Hz", Dimension::frequency, 1.0},   Suffix{"kHz", Dimension::frequency, 1e3},
    Suffix{"MHz", Dimension::frequency, 1e6},  Suffix{"GHz", Dimension::frequency, 1e9},
    Suffix{"THz", Dimension::frequency, 1e12}, Suffix{"K", Dimension::temperature, 1.0},
    Suffix{"mK", Dimension::temperature, 1e-3}, Suffix{"uV", Dimension::voltage, 1e-6},
    Suffix{"mV", Dimension::voltage, 1e-3},    Suffix{"V", Dimension::voltage, 1.0},
    Suffix{"pA", Dimension::current, 1e-12},   Suffix{"nA", Dimension::current, 1e-9},
    Suffix{"uA", Dimension::current, 1e-6},    Suffix{"mA", Dimension::current, 1e-3},
    Suffix{"A", Dimension::current, 1.0},      Suffix{"uS", Dimension::conductance, 1e-6},
    Suffix{"mS", Dimension::conductance, 1e-3}, Suffix{"S", Dimension::conductance, 1.0},
};

}  // namespace

std::string_view si_unit(Dimension dim) {
    switch (dim) {
        case Dimension::length: return "m";
        case Dimension::frequency: return "Hz";
        case Dimension::temperature: return "K";
        case Dimension::voltage: return "V";
        case Dimension::current: return "A";
        case Dimension::conductance: return "S";
        case Dimension::dimensionless: return "";
    }
    return "";
}

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string shown(text);
    if (text.empty()) throw ParseError("empty value");
    const char* first = text.data();
    const char* last = first + text.size();
    if (*first == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc())
        throw ParseError("'" + shown + "': expected a number with an optional unit");
    if (!std::isfinite(value)) throw ParseError("'" + shown + "': value must be finite");
    const std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
    if (suffix.empty()) return value;
    for (const auto& s : kSuffixes) {
        if (s.token != suffix) continue;
        if (s.dim != dim)
            throw ParseError("'" + shown + "': unit '" + std::string(suffix) +
                             "' does not fit a quantity in " + std::string(si_unit(dim)));
        return value * s.scale;
    }
    throw ParseError("'" + shown + "': unknown unit '" + std::string(suffix) + "'");
}

}  // namespace chargelimit::cli
