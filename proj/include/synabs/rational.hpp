#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace synabs {

using Rational = boost::multiprecision::cpp_rational;

// accepts "p/q", "p", or a finite decimal such as "0.5"
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

}  // namespace synabs
