#include "equisq/bigmath.hpp"

#include <cmath>
#include <stdexcept>

namespace equisq {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt power(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

double log2_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive integer");
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) return std::log2(static_cast<double>(x.convert_to<std::uint64_t>()));
  const unsigned shift = bits - 64;
  const BigInt top = x >> shift;
  return static_cast<double>(shift) + std::log2(static_cast<double>(top.convert_to<std::uint64_t>()));
}

double to_double(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  const double sign = num < 0 ? -1.0 : 1.0;
  const BigInt a = num < 0 ? BigInt(-num) : num;
  return sign * std::exp2(log2_big(a) - log2_big(den));
}

std::string to_fixed(const BigRational& q, int places) {
  BigInt scale = power(BigInt(10), static_cast<unsigned>(places));
  BigInt num = boost::multiprecision::numerator(q) * scale;
  BigInt den = boost::multiprecision::denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scaled = (2 * num + den) / (2 * den);
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places))
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative && scaled != 0 ? "-" + digits : digits;
}

}  // namespace equisq
