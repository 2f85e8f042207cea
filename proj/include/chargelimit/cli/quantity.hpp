#pragma once

#include <string_view>

namespace chargelimit::cli {

enum class Dimension { length, frequency, temperature, voltage, current, conductance, dimensionless };

std::string_view si_unit(Dimension dim);

/// Parses a number immediately followed by an optional unit suffix, e.g.
/// "50nm", "3.2898e15Hz", "1.602177e-13A", "4.2K". Suffixes are whole tokens
/// from a fixed list, so "m" is always metres and "mV" always millivolts.
/// A bare number is taken in SI base units. Throws ParseError.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace chargelimit::cli
