#pragma once

#include <array>

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/matrix.hpp"

namespace gdet {

/// Which family of coefficient equations c_{1w(1)} ... c_{nw(n)} = 1 is
/// imposed: over even w, over odd w, or over all of S_n.
enum class EquationMode { Even, Odd, Full };

inline const char* to_string(EquationMode mode) {
  switch (mode) {
    case EquationMode::Even: return "even";
    case EquationMode::Odd: return "odd";
    case EquationMode::Full: return "full";
  }
  return "?";
}

namespace sign_pattern {

/// Entry of a 4x4 sign grid: 1, eps_u, eps_v or eps_u * eps_v.
enum class Sym { One, U, V, UV };

using Grid = std::array<std::array<Sym, 4>, 4>;

// Sign twists solving the equations over the even permutations of S_4.
inline constexpr Grid kEven = {{
    {Sym::One, Sym::One, Sym::One, Sym::One},
    {Sym::One, Sym::U, Sym::V, Sym::UV},
    {Sym::One, Sym::V, Sym::UV, Sym::U},
    {Sym::One, Sym::UV, Sym::U, Sym::V},
}};

// Odd permutations: kEven with rows 3 and 4 interchanged.
inline constexpr Grid kOdd = {{
    {Sym::One, Sym::One, Sym::One, Sym::One},
    {Sym::One, Sym::U, Sym::V, Sym::UV},
    {Sym::One, Sym::UV, Sym::U, Sym::V},
    {Sym::One, Sym::V, Sym::UV, Sym::U},
}};

inline int value(Sym s, int eps_u, int eps_v) {
  switch (s) {
    case Sym::One: return 1;
    case Sym::U: return eps_u;
    case Sym::V: return eps_v;
    case Sym::UV: return eps_u * eps_v;
  }
  return 1;
}

/// The +-1 grid for the given signs; mode must be Even or Odd.
inline DenseMatrix matrix(Field field, int eps_u, int eps_v, EquationMode mode) {
  if (mode == EquationMode::Full) throw Error(ErrorCode::InvalidArgument, "sign patterns exist for even/odd modes only");
  if ((eps_u != 1 && eps_u != -1) || (eps_v != 1 && eps_v != -1)) {
    throw Error(ErrorCode::InvalidArgument, "signs must be +1 or -1");
  }
  const Grid& g = mode == EquationMode::Even ? kEven : kOdd;
  DenseMatrix m(field, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Scalar(field, value(g[i][j], eps_u, eps_v));
  }
  return m;
}

}  // namespace sign_pattern
}  // namespace gdet
