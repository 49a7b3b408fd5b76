#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace capelli {

// Exact arithmetic base types. GMP does the limb work; everything in this
// library is built on top of these two.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_pow(const BigInt &base, unsigned long exponent)
{
	BigInt r;
	mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
	return r;
}

inline BigInt big_abs(const BigInt &a)
{
	BigInt r;
	mpz_abs(r.get_mpz_t(), a.get_mpz_t());
	return r;
}

/// Number of bits in |a|; 0 for a = 0.
inline unsigned long bit_length(const BigInt &a)
{
	if (a == 0)
		return 0;
	return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline bool is_even(const BigInt &a) { return mpz_even_p(a.get_mpz_t()) != 0; }

inline std::string to_string(const BigInt &a) { return a.get_str(); }

/// "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational &a)
{
	if (a.get_den() == 1)
		return a.get_num().get_str();
	return a.get_num().get_str() + "/" + a.get_den().get_str();
}

/// Divisors of n in ascending order (n >= 1).
std::vector<unsigned long> divisors_of(unsigned long n);

/// Largest power of two dividing n, returned as its exponent (n >= 1).
unsigned long two_adic_valuation(unsigned long n);

inline unsigned long odd_part(unsigned long n) { return n >> two_adic_valuation(n); }

inline bool is_power_of_two(unsigned long n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace capelli
