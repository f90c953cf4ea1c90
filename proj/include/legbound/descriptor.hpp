#pragma once

// Text descriptors for CLI input.
//
//   real   := decimal | decimal '/' decimal        e.g. 0.25, -1, 6/7
//   pieces := real ( '[' coeffs ']' real )+
//   coeffs := real ( ',' real )*
//
// A pieces descriptor lists breakpoints from -1 to 1 with the monomial
// coefficients (ascending powers of x) of the polynomial on each interval:
// "-1 [0,-1] 0 [0,1] 1" is |x|.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "legbound/piecewise_function.hpp"

namespace legbound {

inline double parse_real(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_decimal = [&](std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty number");
    const std::string copy(s);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(copy, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + copy + "'");
    }
    if (used != copy.size() || !std::isfinite(value)) {
      throw std::invalid_argument("not a number: '" + copy + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const double num = parse_decimal(text.substr(0, slash));
  const double den = parse_decimal(text.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

inline PiecewiseSmoothFunction parse_pieces(std::string_view text) {
  std::vector<double> breakpoints;
  std::vector<std::vector<double>> coefficients;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_breakpoint = [&] {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != '[' &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (start == pos) throw std::invalid_argument("pieces: expected a breakpoint");
    breakpoints.push_back(parse_real(text.substr(start, pos - start)));
  };

  read_breakpoint();
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '[') throw std::invalid_argument("pieces: expected '['");
    const auto close = text.find(']', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("pieces: missing ']'");
    std::vector<double> piece;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      piece.push_back(parse_real(body.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    coefficients.push_back(std::move(piece));
    pos = close + 1;
    read_breakpoint();
    skip_space();
  }
  if (coefficients.empty()) throw std::invalid_argument("pieces: need at least one piece");
  return make_piecewise_polynomial(std::move(breakpoints), coefficients,
                                   "polynomial " + std::string(text));
}

}  // namespace legbound
