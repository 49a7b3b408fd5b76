#pragma once

#include "capelli/numbers.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace capelli {

constexpr unsigned long kDefaultTrialBound = 1000000;

/// Complete signed prime factorization: sign * prod(prime^exponent) = value,
/// primes strictly increasing, every exponent >= 1.
struct PrimeFactorization {
	BigInt value;
	int sign = 1;
	std::vector<std::pair<BigInt, unsigned long>> factors;

	/// Re-multiplies the factorization and compares with value.
	bool reconstructs() const;

	/// gcd of the prime exponents (0 when there are no factors).
	unsigned long exponent_gcd() const;

	/// Number of distinct primes.
	std::size_t omega() const { return factors.size(); }
};

/// Maximal-exponent perfect power form: base^exponent = original value,
/// exponent = 1 when the value is not a perfect power.
struct PerfectPower {
	BigInt base;
	unsigned long exponent = 1;
};

/// gcd of the absolute values; gcd of an all-zero list is 0.
/// Throws std::invalid_argument on an empty list.
BigInt gcd_many(const std::vector<BigInt> &values);

/// Deterministic primality for |n| < 3.3*10^24 (13-witness Miller-Rabin).
/// Throws factor_bound_error for larger inputs rather than guessing.
bool certified_prime(const BigInt &n);

/// Trial division up to trial_bound; a remaining cofactor is accepted only
/// when certified prime. Requires |n| >= 2. Throws factor_bound_error when a
/// composite cofactor survives the bound.
PrimeFactorization factorize(const BigInt &n, unsigned long trial_bound = kDefaultTrialBound);

/// The integer b with b^t = a, if one exists (t >= 1). Negative a succeeds
/// only for odd t. The root is re-verified by exact multiplication.
std::optional<BigInt> nth_root_exact(const BigInt &a, unsigned long t);

/// Canonical maximal perfect-power form of a, |a| >= 2. For a < 0 the base
/// carries the sign and the exponent is odd.
PerfectPower perfect_power_decompose(const BigInt &a);

/// Writes a = b^m with m >= 2, m | n, m maximal among divisors of n that are
/// admissible perfect-power exponents of a; absent when no such m exists.
/// Requires |a| >= 2, n >= 2.
std::optional<std::pair<BigInt, unsigned long>> property_p_decompose(const BigInt &a, unsigned long n);

/// Canonical-base test from the reducibility corollary: b is prime, or b has
/// at least two prime divisors and the gcd of its exponents is coprime to n.
/// Requires b >= 2.
bool has_property_p(const BigInt &b, unsigned long n,
                    unsigned long trial_bound = kDefaultTrialBound);

} // namespace capelli
