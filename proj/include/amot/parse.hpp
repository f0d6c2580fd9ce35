#pragma once

#include "amot/kpoly.hpp"
#include "amot/twisted.hpp"

namespace amot {

// q = p^e for the coefficient field of A = F_q[t]; the A-field is F_{q^d}
// when finite and F_q(theta) otherwise.
struct FieldSpec {
    uint32_t p = 3;
    uint32_t e = 1;
    uint32_t d = 1;
    bool finite = true;

    uint64_t q() const;
    std::string to_string() const;
};

// "GF(q^d)" with q a prime power (split into p^e); a trailing "(theta)"
// picks the generic base instead, as in "GF(3)(theta)".
FieldSpec parse_field_spec(const std::string& s);

// Expression grammar shared by the CLI and module files:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)*
//   atom   := integer | identifier | '(' expr ')'
// Identifiers name the variable of the target domain ('t' for A, 'T' for
// tau, 'theta'/'x'/'y' for coefficients). Errors carry the position.

// Coefficients live at the given tower level: integer literals always work;
// 'y' (printed 'g') names the level generator and 'x' (printed 'b') the F_q
// one, when distinct from var.
Poly parse_poly(const FieldTower* tw, const std::string& s, const std::string& var = "t",
                uint32_t level = 1);
PrimeOfA parse_prime(const FieldTower* tw, const std::string& s, const std::string& var = "t");
RationalFunc parse_ratfunc(const FieldTower* tw, const std::string& s,
                           const std::string& var = "t", uint32_t level = 1);

// Element of F_{q^level}: 'y' or 'g' is the level generator, 'x' or 'b' the
// F_q one.
FieldElement parse_element(const FieldTower* tw, uint32_t level, const std::string& s);

// Twisted polynomial in T over K. Coefficients use 'theta' (and the field's
// own variable name) over a generic base, 'theta'/'x'/'y' over a finite one;
// '/' is defined between tau-degree-0 values only.
TwistedPoly parse_twisted(const AField* K, const std::string& s);

// Rational function in t over K, same coefficient identifiers.
KRat parse_krat(const AField* K, const std::string& s);

}  // namespace amot
