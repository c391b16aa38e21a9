#ifndef HCT_PARSE_HPP
#define HCT_PARSE_HPP

#include <string>

#include "hct/poly.hpp"

namespace hct {

// "Q" or "Q(sqrt(-d))"
NumberField parse_field(const std::string& s);

// over Q: the prime itself, e.g. "7"; over quadratic fields "(7)" or
// "(2, 1+sqrt(-5))"
PrimeIdeal parse_place(const NumberField& K, const std::string& s);

// comma-separated places; "" is the empty set
PlaceSet parse_place_set(const NumberField& K, const std::string& s);

// "p" or "p/q"
mpq_class parse_rational(const std::string& s);

// "a+b*sqrt(-d)" with rational a, b
FieldElement parse_element(const NumberField& K, const std::string& s);

// univariate: "x^3 - 6*x^2 + 11*x - 6"
Poly parse_poly(const std::string& s);

// homogeneous in x, y: "x^2*y - 3*y^3"
BinaryForm parse_form(const std::string& s);

}  // namespace hct

#endif
