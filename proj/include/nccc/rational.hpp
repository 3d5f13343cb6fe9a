#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace nccc {

using Int = mpz_class;
using Q = mpq_class;
using IntVec = std::vector<Int>;
using QVec = std::vector<Q>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws std::invalid_argument.
Q parse_rational(std::string_view text);

/// n / d in canonical form; d != 0.
Q make_q(long n, long d);

std::string to_string(const Q& q);
std::string to_string(const Int& z);

QVec to_qvec(const IntVec& v);

Q dot(const QVec& a, const QVec& b);

int sign(const Q& q);
Int floor_q(const Q& q);
Int ceil_q(const Q& q);
bool is_integer(const Q& q);

/// Smallest positive rescaling of v with coprime integer entries. Zero stays zero.
IntVec primitive_integer(const QVec& v);
IntVec primitive_integer(const IntVec& v);

Int gcd_of(const IntVec& v);

}  // namespace nccc
