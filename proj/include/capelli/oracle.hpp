#pragma once

#include "capelli/binomial.hpp"
#include "capelli/numbers.hpp"
#include "capelli/poly.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace capelli {

constexpr unsigned long kOracleMaxDegree = 24;

/// The n complex roots of x^n - a, grouped into conjugation orbits. The
/// approximations below are display copies; the search itself runs at
/// precision_bits of working precision and was validated to reconstruct the
/// target within 2^(-precision_bits/2) per coefficient.
struct RootSet {
	unsigned long n = 0;
	BigInt a;
	long precision_bits = 0;
	std::vector<std::complex<double>> roots;
	bool validated = false;
};

RootSet compute_root_set(unsigned long n, const BigInt &a, long precision_bits = 0);

/// Ground-truth reducibility of x^n - a by exhaustive root-subset search:
/// every conjugation-closed subset of size 1..n/2 is turned into a monic
/// candidate, rounded, and accepted only when exact integer division
/// confirms it. Returns the first confirmed factor (subsets ordered by size,
/// then lexicographically) or Irreducible. Requires 2 <= n <= 24, a != 0.
struct OracleResult {
	Decision decision = Decision::Irreducible;
	std::optional<IntPoly> factor;
};

OracleResult oracle_decide(unsigned long n, const BigInt &a);

/// Full factorization into oracle-irreducible factors, sorted by degree then
/// lexicographic coefficients. The certificate re-verifies exactly.
Certificate oracle_factor(unsigned long n, const BigInt &a);

} // namespace capelli
