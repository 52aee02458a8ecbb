#pragma once

// Exact integer and rational helpers shared by the counting code.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace equisq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt power(const BigInt& base, unsigned exponent);

// log2 of a positive integer, accurate to double precision.
double log2_big(const BigInt& x);
double to_double(const BigRational& q);

// Decimal rendering of q rounded half-up to `places` digits.
std::string to_fixed(const BigRational& q, int places);

}  // namespace equisq
