#pragma once

#include <string_view>

#include "rentropy/laws.hpp"

namespace rentropy {

/// Parses a law specification string:
///
///   law      := term ('|' modifier)*
///   term     := family ':' key=value (',' key=value)*
///             | 'mix:' item (',' item)*
///   item     := ['q=' number ','] '(' law ')'
///   modifier := 'std' | 'affine:a=' number [',b=' number]
///
/// Families: gaussian:a, uniform:a, gamma:lam,a, exponential:a, laplace:a,
/// student:lam,a, cauchy:a, binomial:n,p, poisson:lam, duniform:n,a. At most
/// one mixture item may omit its weight; it receives the remainder. Numbers
/// are decimal literals or simple fractions such as 2/3.
///
/// Throws ParseError naming the offending token. `|std` on a law without a
/// variance propagates NoVarianceError.
Law parse_law(std::string_view spec);

}  // namespace rentropy
